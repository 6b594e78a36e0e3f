#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "mrl/vec.hpp"

namespace mrl {

enum class TrajectoryKind { Static, RectilinearPeriodic, EightShape };

inline std::string to_string(TrajectoryKind k) {
    switch (k) {
        case TrajectoryKind::Static: return "static";
        case TrajectoryKind::RectilinearPeriodic: return "rpm";
        case TrajectoryKind::EightShape: return "eight";
    }
    return "?";
}

/// Horizontal platform trajectory: either static, a rectilinear periodic
/// movement (RPM) of amplitude r_mp along x, or an eight shape spanning
/// r_mp in x and y. v_mp is the maximum platform speed.
struct TrajectorySpec {
    TrajectoryKind kind = TrajectoryKind::RectilinearPeriodic;
    double v_mp = 0.0;  // m/s
    double r_mp = 0.0;  // m

    void validate() const {
        if (v_mp < 0.0) throw std::invalid_argument("trajectory: v_mp must be >= 0");
        if (kind != TrajectoryKind::Static && r_mp <= 0.0)
            throw std::invalid_argument("trajectory: r_mp must be > 0 for a moving platform");
    }

    double omega() const { return kind == TrajectoryKind::Static ? 0.0 : v_mp / r_mp; }
};

struct PlatformState {
    Vec3 position;
    Vec3 velocity;
    Vec3 acceleration;
};

/// Peak acceleration v_mp^2 / r_mp reached by both trajectory kinds.
inline double max_platform_acceleration(double v_mp, double r_mp) {
    if (r_mp <= 0.0) throw std::invalid_argument("max_platform_acceleration: r_mp must be > 0");
    return v_mp * v_mp / r_mp;
}

/// Closed-form platform state at time t.
///
/// RPM:   x(t) = r sin(wt), so xdd(t) = -(v^2/r) sin(wt) with w = v/r.
/// The platform starts at the origin with velocity v_mp; a zero-velocity
/// start cannot satisfy the bounded periodic motion.
/// Eight: r [sin(wt), sin(wt/2), 0] with analytic derivatives.
inline PlatformState platform_state_at(const TrajectorySpec& spec, double t) {
    PlatformState s;
    if (spec.kind == TrajectoryKind::Static || spec.v_mp == 0.0) return s;
    const double w = spec.omega();
    const double a_peak = spec.v_mp * spec.v_mp / spec.r_mp;
    switch (spec.kind) {
        case TrajectoryKind::Static:
            break;
        case TrajectoryKind::RectilinearPeriodic:
            s.position = {spec.r_mp * std::sin(w * t), 0.0, 0.0};
            s.velocity = {spec.v_mp * std::cos(w * t), 0.0, 0.0};
            s.acceleration = {-a_peak * std::sin(w * t), 0.0, 0.0};
            break;
        case TrajectoryKind::EightShape:
            s.position = {spec.r_mp * std::sin(w * t), spec.r_mp * std::sin(0.5 * w * t), 0.0};
            s.velocity = {spec.v_mp * std::cos(w * t), 0.5 * spec.v_mp * std::cos(0.5 * w * t), 0.0};
            s.acceleration = {-a_peak * std::sin(w * t), -0.25 * a_peak * std::sin(0.5 * w * t), 0.0};
            break;
    }
    return s;
}

/// Maximum pitch angle giving a horizontal acceleration k_a times the
/// platform's peak: theta_max = atan(k_a a_mp_max / g).
inline double derive_theta_max(double k_a, double a_mp_max, double g) {
    if (g <= 0.0) throw std::invalid_argument("derive_theta_max: g must be > 0");
    if (k_a <= 0.0) throw std::invalid_argument("derive_theta_max: k_a must be > 0");
    return std::atan(k_a * a_mp_max / g);
}

/// Agent frequency such that the vehicle can traverse its full pitch range
/// k_man times faster than the platform traverses its acceleration range:
/// f_ag = 2 n_theta k_man omega_mp / pi.
inline double derive_agent_frequency(int n_theta, double k_man, double omega_mp) {
    if (n_theta < 1) throw std::invalid_argument("derive_agent_frequency: n_theta must be >= 1");
    if (k_man < 1.0) throw std::invalid_argument("derive_agent_frequency: k_man must be >= 1");
    if (omega_mp <= 0.0) throw std::invalid_argument("derive_agent_frequency: omega_mp must be > 0");
    return 2.0 * n_theta * k_man * omega_mp / M_PI;
}

/// Number of curriculum steps after the initial one: smallest n with
/// sigma^(2(n+1)) x_max <= l_mp / 2.
inline int derive_num_curriculum_steps(double sigma, double l_mp, double x_max) {
    if (sigma <= 0.0 || sigma >= 1.0)
        throw std::invalid_argument("derive_num_curriculum_steps: sigma must be in (0, 1)");
    if (l_mp <= 0.0 || l_mp / 2.0 >= x_max)
        throw std::invalid_argument(
            "derive_num_curriculum_steps: platform half-edge must be positive and smaller than x_max");
    const int n = static_cast<int>(std::ceil(std::log(l_mp / (2.0 * x_max)) / std::log(sigma * sigma))) - 1;
    return n;
}

/// Time for a platform accelerating constantly at a_mp_max to cross x_max
/// from rest; scales the velocity normalization.
inline double worst_case_horizon(double x_max, double a_mp_max) {
    if (a_mp_max <= 0.0)
        throw std::invalid_argument("worst_case_horizon: a_mp_max must be > 0 (static-only scenario)");
    return std::sqrt(2.0 * x_max / a_mp_max);
}

}  // namespace mrl
