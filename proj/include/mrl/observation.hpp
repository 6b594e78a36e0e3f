#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "mrl/platform.hpp"
#include "mrl/rng.hpp"
#include "mrl/vec.hpp"
#include "mrl/vehicle.hpp"

namespace mrl {

/// Relative platform-minus-vehicle state expressed in the stability frame
/// (earth frame rotated about z by the vehicle yaw).
struct RelativeObservation {
    Vec3 p_c;  // relative position (m)
    Vec3 v_c;  // relative velocity (m/s)
    Vec3 a_c;  // filtered relative acceleration (m/s^2), filled by AccelFilter
    double phi_rel = 0.0, theta_rel = 0.0, psi_rel = 0.0;
};

inline RelativeObservation relative_state(const UavState& uav, const PlatformState& platform) {
    RelativeObservation o;
    o.p_c = rotate_z(platform.position - uav.position, -uav.yaw);
    o.v_c = rotate_z(platform.velocity - uav.velocity, -uav.yaw);
    o.phi_rel = -uav.roll;
    o.theta_rel = -uav.pitch;
    o.psi_rel = -uav.yaw;  // platform heading is fixed at zero
    return o;
}

/// First-order Butterworth low-pass (bilinear transform) applied to the
/// finite difference of the relative velocity. State is primed with the
/// first sample so there is no startup spike. Coefficients at sample time T:
///   K = 2/T, wc = 2 pi f_c
///   y[n] = wc/(K+wc) (x[n] + x[n-1]) + (K-wc)/(K+wc) y[n-1]
struct AccelFilter {
    double cutoff_hz = 0.3;
    bool primed = false;
    Vec3 prev_v;
    Vec3 prev_raw;
    Vec3 prev_out;

    void reset() {
        primed = false;
        prev_v = prev_raw = prev_out = {};
    }
};

inline Vec3 filtered_accel(AccelFilter& f, const Vec3& v_c, double dt_obs) {
    if (dt_obs <= 0.0) throw std::invalid_argument("filtered_accel: dt_obs must be > 0");
    if (!f.primed) {
        f.primed = true;
        f.prev_v = v_c;
        f.prev_raw = {};
        f.prev_out = {};
        return {};
    }
    const Vec3 raw = (v_c - f.prev_v) * (1.0 / dt_obs);
    f.prev_v = v_c;
    const double k = 2.0 / dt_obs;
    const double wc = 2.0 * M_PI * f.cutoff_hz;
    const double b0 = wc / (k + wc);
    const double a1 = (k - wc) / (k + wc);
    const Vec3 out = (raw + f.prev_raw) * b0 + f.prev_out * a1;
    f.prev_raw = raw;
    f.prev_out = out;
    return out;
}

/// One axis of the scaled observation, each component clipped to [-1, 1].
struct NormalizedObs1D {
    double p_x = 0.0;
    double v_x = 0.0;
    double a_x = 0.0;
};

inline NormalizedObs1D normalize_clip(double p, double v, double a, double p_max, double v_max,
                                      double a_max) {
    if (p_max <= 0.0 || v_max <= 0.0 || a_max <= 0.0)
        throw std::invalid_argument("normalize_clip: normalization constants must be > 0");
    return {clip(p / p_max, -1.0, 1.0), clip(v / v_max, -1.0, 1.0), clip(a / a_max, -1.0, 1.0)};
}

enum class Axis { Longitudinal, Lateral };

struct RawObs1D {
    double p = 0.0;
    double v = 0.0;
    double a = 0.0;
};

inline RawObs1D axis_project(const RelativeObservation& obs, Axis axis) {
    if (axis == Axis::Longitudinal) return {obs.p_c.x, obs.v_c.x, obs.a_c.x};
    return {obs.p_c.y, obs.v_c.y, obs.a_c.y};
}

/// Zero-mean Gaussian sensor noise on position and velocity. Acceleration is
/// not perturbed directly; it is recomputed downstream from the noisy
/// velocity, so noise propagates through the filter.
struct NoiseModel {
    std::array<double, 3> sigma_p{0.0, 0.0, 0.0};
    std::array<double, 3> sigma_v{0.0, 0.0, 0.0};

    bool enabled() const {
        for (double s : sigma_p)
            if (s != 0.0) return true;
        for (double s : sigma_v)
            if (s != 0.0) return true;
        return false;
    }
};

inline RelativeObservation add_noise(const RelativeObservation& obs, const NoiseModel& noise,
                                     Rng& rng) {
    RelativeObservation o = obs;
    o.p_c.x += rng.normal(0.0, noise.sigma_p[0]);
    o.p_c.y += rng.normal(0.0, noise.sigma_p[1]);
    o.p_c.z += rng.normal(0.0, noise.sigma_p[2]);
    o.v_c.x += rng.normal(0.0, noise.sigma_v[0]);
    o.v_c.y += rng.normal(0.0, noise.sigma_v[1]);
    o.v_c.z += rng.normal(0.0, noise.sigma_v[2]);
    return o;
}

}  // namespace mrl
