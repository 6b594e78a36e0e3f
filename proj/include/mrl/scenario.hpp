#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrl/double_q.hpp"
#include "mrl/observation.hpp"
#include "mrl/platform.hpp"
#include "mrl/reward.hpp"
#include "mrl/vehicle.hpp"

namespace mrl {

/// Geometry and platform motion of one training case.
struct ScenarioSpec {
    std::string name = "custom";
    FlyZone fly_zone{4.5, 4.5, 9.0};
    double platform_edge = 1.0;    // l_mp (m)
    double platform_height = 0.3;  // platform surface above ground (m)
    TrajectorySpec trajectory{TrajectoryKind::RectilinearPeriodic, 1.6, 2.0};
    double gravity = 9.81;
};

struct DiscretizationParams {
    double sigma = 0.8;
    double sigma_a = 0.416;
    int n_theta = 3;
    double k_a = 3.0;
    double k_man = 15.0;
};

/// Physics/observation rates and low-level controller tuning.
struct SimParams {
    double dt_sim = 0.002;        // physics step (s)
    double obs_rate_hz = 100.0;   // observation update rate
    double tau_att = 0.1;         // attitude lag time constant (s)
    double accel_cutoff_hz = 0.3; // relative-acceleration filter cutoff
    double vz_accel_limit_g = 2.0;
    PidGains yaw_pid{8.0, 1.0, 0.0};
    PidGains vz_pid{5.0, 10.0, 0.0};

    double dt_obs() const { return 1.0 / obs_rate_hz; }
};

/// All quantities computed from a scenario; never user-supplied.
struct DerivedHyperparams {
    double a_mp_max = 0.0;   // peak platform acceleration (m/s^2)
    double omega_mp = 0.0;   // platform angular frequency (rad/s)
    double theta_max = 0.0;  // maximum pitch/roll magnitude (rad)
    double f_ag = 0.0;       // agent frequency (Hz)
    double dt_agent = 0.0;   // 1 / f_ag
    double t_0 = 0.0;        // worst-case crossing horizon (s)
    int n_cs = 0;            // curriculum steps after the initial one
    double delta_theta = 0.0;
    double p_max = 0.0, v_max = 0.0, a_max = 0.0;  // normalization constants
};

/// Derive all training hyperparameters from the scenario geometry and the
/// platform's worst-case kinematics. Requires a moving training platform.
inline DerivedHyperparams derive_hyperparams(const ScenarioSpec& scenario,
                                             const DiscretizationParams& disc) {
    scenario.trajectory.validate();
    if (scenario.trajectory.kind == TrajectoryKind::Static || scenario.trajectory.v_mp <= 0.0)
        throw std::invalid_argument(
            "derive_hyperparams: training requires a moving platform (v_mp > 0)");
    DerivedHyperparams h;
    h.a_mp_max = max_platform_acceleration(scenario.trajectory.v_mp, scenario.trajectory.r_mp);
    h.omega_mp = scenario.trajectory.omega();
    h.theta_max = derive_theta_max(disc.k_a, h.a_mp_max, scenario.gravity);
    h.f_ag = derive_agent_frequency(disc.n_theta, disc.k_man, h.omega_mp);
    h.dt_agent = 1.0 / h.f_ag;
    h.t_0 = worst_case_horizon(scenario.fly_zone.x_max, h.a_mp_max);
    h.n_cs = derive_num_curriculum_steps(disc.sigma, scenario.platform_edge, scenario.fly_zone.x_max);
    h.delta_theta = h.theta_max / disc.n_theta;
    h.p_max = scenario.fly_zone.x_max;
    h.v_max = h.a_mp_max * h.t_0;
    h.a_max = h.a_mp_max;
    return h;
}

struct TrainingParams {
    double gamma = 0.99;
    LearningRateParams lr{};
    ExplorationSchedule epsilon{};
    double t_max = 20.0;  // maximum episode duration (s)
    int success_window = 100;
    double success_threshold = 0.96;
    double z_init = 4.0;
    double vz_setpoint = -0.1;
    int episode_cap = 10000;
    double goal_dwell_s = 1.0;
};

/// One platform motion pattern for an evaluation battery.
struct EvalScenario {
    std::string name;
    TrajectorySpec trajectory;
};

struct EvalParams {
    int n_trials = 150;
    double z_init = 2.5;
    double psi_rel = M_PI / 4.0;
    std::vector<EvalScenario> scenarios;
};

}  // namespace mrl
