#pragma once

#include <cmath>
#include <stdexcept>

#include "mrl/platform.hpp"
#include "mrl/vec.hpp"

namespace mrl {

/// Axis-aligned box [-x_max, x_max] x [-y_max, y_max] x [0, z_max].
struct FlyZone {
    double x_max = 0.0;
    double y_max = 0.0;
    double z_max = 0.0;
};

inline bool in_fly_zone(const Vec3& p, const FlyZone& zone) {
    return p.x >= -zone.x_max && p.x <= zone.x_max && p.y >= -zone.y_max && p.y <= zone.y_max &&
           p.z >= 0.0 && p.z <= zone.z_max;
}

struct PidGains {
    double k_p = 0.0;
    double k_i = 0.0;
    double k_d = 0.0;
};

/// PID with trapezoidal integral. The previous error is primed with the
/// first sample after a reset, so the first integral contribution is
/// rectangular and the derivative term starts at zero.
struct PidState {
    PidGains gains;
    double integral = 0.0;
    double prev_error = 0.0;
    bool primed = false;

    void reset() {
        integral = 0.0;
        prev_error = 0.0;
        primed = false;
    }
};

inline double pid_step(PidState& pid, double error, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("pid_step: dt must be > 0");
    if (!pid.primed) {
        pid.prev_error = error;
        pid.primed = true;
    }
    pid.integral += 0.5 * (pid.prev_error + error) * dt;
    const double derivative = (error - pid.prev_error) / dt;
    pid.prev_error = error;
    return pid.gains.k_p * error + pid.gains.k_i * pid.integral + pid.gains.k_d * derivative;
}

/// Reduced-order point-mass vehicle. Roll/pitch track their setpoints via a
/// first-order lag (stand-in for the low-level attitude controller), yaw is
/// rate-controlled by a PID, and the vertical channel is a PID on vertical
/// velocity whose output acts as acceleration. Horizontal acceleration from
/// attitude, with thrust compensating gravity:
///   a_x = -g tan(theta), a_y = g tan(phi)   (stability axes, rotated by yaw)
struct UavState {
    Vec3 position;
    Vec3 velocity;
    double roll = 0.0, pitch = 0.0, yaw = 0.0;
    double roll_ref = 0.0, pitch_ref = 0.0, yaw_ref = 0.0;
    double vz_ref = 0.0;
};

struct VehicleParams {
    double tau_att = 0.1;        // attitude lag time constant (s)
    double gravity = 9.81;       // m/s^2
    double attitude_limit = 0.0; // |roll|,|pitch| clamp (rad); <=0 disables
    double vz_accel_limit = 2.0 * 9.81;
    PidGains yaw_pid{8.0, 1.0, 0.0};
    PidGains vz_pid{5.0, 10.0, 0.0};
};

/// One semi-implicit Euler step of duration dt_sim.
inline UavState step_physics(const UavState& uav, const VehicleParams& p, PidState& yaw_pid,
                             PidState& vz_pid, double dt_sim) {
    if (dt_sim <= 0.0) throw std::invalid_argument("step_physics: dt_sim must be > 0");
    UavState s = uav;

    const double decay = 1.0 - std::exp(-dt_sim / p.tau_att);
    s.roll += (s.roll_ref - s.roll) * decay;
    s.pitch += (s.pitch_ref - s.pitch) * decay;
    if (p.attitude_limit > 0.0) {
        s.roll = clip(s.roll, -p.attitude_limit, p.attitude_limit);
        s.pitch = clip(s.pitch, -p.attitude_limit, p.attitude_limit);
    }
    const double yaw_rate = pid_step(yaw_pid, s.yaw_ref - s.yaw, dt_sim);
    s.yaw += yaw_rate * dt_sim;

    const double ax_s = -p.gravity * std::tan(s.pitch);
    const double ay_s = p.gravity * std::tan(s.roll);
    const double c = std::cos(s.yaw), sn = std::sin(s.yaw);
    const double ax = c * ax_s - sn * ay_s;
    const double ay = sn * ax_s + c * ay_s;
    const double az = clip(pid_step(vz_pid, s.vz_ref - s.velocity.z, dt_sim), -p.vz_accel_limit,
                           p.vz_accel_limit);

    s.velocity += Vec3{ax, ay, az} * dt_sim;
    s.position += s.velocity * dt_sim;
    return s;
}

// Discrete pitch-setpoint actions. Index order matches the Q-table layout.
enum class PitchAction : int { Increase = 0, Decrease = 1, Hold = 2 };
inline constexpr int kNumActions = 3;

/// Saturating index update on the pitch set {0, ..., 2 n_theta}.
inline int apply_action(int i_theta, PitchAction action, int n_theta) {
    switch (action) {
        case PitchAction::Increase: return i_theta >= 2 * n_theta ? 2 * n_theta : i_theta + 1;
        case PitchAction::Decrease: return i_theta <= 0 ? 0 : i_theta - 1;
        case PitchAction::Hold: return i_theta;
    }
    return i_theta;
}

/// Pitch angle of set element i: -theta_max + i * theta_max / n_theta.
inline double pitch_from_index(int i_theta, double theta_max, int n_theta) {
    return -theta_max + static_cast<double>(i_theta) * (theta_max / n_theta);
}

enum class TouchdownResult { Airborne, Success, Miss };

/// Landing predicate: below the platform surface, the vehicle center must be
/// within the platform's half-edge on both axes (boundary inclusive).
inline TouchdownResult touchdown_check(const UavState& uav, const PlatformState& platform,
                                       double l_mp, double platform_height) {
    if (uav.position.z > platform_height) return TouchdownResult::Airborne;
    const double half = 0.5 * l_mp;
    const bool over = std::abs(uav.position.x - platform.position.x) <= half &&
                      std::abs(uav.position.y - platform.position.y) <= half;
    return over ? TouchdownResult::Success : TouchdownResult::Miss;
}

}  // namespace mrl
