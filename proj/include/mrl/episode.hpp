#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "mrl/observation.hpp"
#include "mrl/platform.hpp"
#include "mrl/rng.hpp"
#include "mrl/scenario.hpp"
#include "mrl/vehicle.hpp"

namespace mrl {

using PlatformMotionFn = std::function<PlatformState(double)>;

inline PlatformMotionFn closed_form_platform(TrajectorySpec spec) {
    return [spec](double t) { return platform_state_at(spec, t); };
}

/// Fixed-timestep world shared by training episodes and evaluation trials.
/// Physics advances at dt_sim; the relative observation (with optional noise
/// and the acceleration filter) refreshes at the observation rate; agent
/// ticks fire on the first physics step whose time reaches the next agent
/// period (the agent frequency does not divide the physics rate evenly).
class SimWorld {
public:
    enum class Advance { AgentTick, Stopped };

    SimWorld(const ScenarioSpec& scenario, const DerivedHyperparams& hp, const SimParams& sim,
             PlatformMotionFn platform_fn, const UavState& init, const NoiseModel* noise = nullptr,
             Rng* noise_rng = nullptr)
        : scenario_(scenario),
          hp_(hp),
          sim_(sim),
          platform_fn_(std::move(platform_fn)),
          uav_(init),
          noise_(noise),
          noise_rng_(noise_rng) {
        vparams_.tau_att = sim_.tau_att;
        vparams_.gravity = scenario_.gravity;
        vparams_.attitude_limit = hp_.theta_max;
        vparams_.vz_accel_limit = sim_.vz_accel_limit_g * scenario_.gravity;
        vparams_.yaw_pid = sim_.yaw_pid;
        vparams_.vz_pid = sim_.vz_pid;
        yaw_pid_.gains = sim_.yaw_pid;
        vz_pid_.gains = sim_.vz_pid;
        filter_.cutoff_hz = sim_.accel_cutoff_hz;
        obs_every_ = static_cast<long>(std::lround(sim_.dt_obs() / sim_.dt_sim));
        if (obs_every_ < 1) throw std::invalid_argument("SimWorld: dt_sim must not exceed dt_obs");
        platform_ = platform_fn_(0.0);
    }

    /// Advance physics until the next agent tick. `stop` is evaluated after
    /// every physics step and ends the advance early (used for touchdown).
    template <typename StopFn>
    Advance advance_until_agent_tick(StopFn&& stop) {
        for (;;) {
            if (phys_ == next_obs_phys_) {
                update_observation();
                next_obs_phys_ += obs_every_;
            }
            if (t() >= next_agent_time_ - 1e-9) {
                next_agent_time_ += hp_.dt_agent;
                return Advance::AgentTick;
            }
            uav_ = step_physics(uav_, vparams_, yaw_pid_, vz_pid_, sim_.dt_sim);
            ++phys_;
            platform_ = platform_fn_(t());
            if (stop(*this)) return Advance::Stopped;
        }
    }

    Advance advance_until_agent_tick() {
        return advance_until_agent_tick([](const SimWorld&) { return false; });
    }

    double t() const { return static_cast<double>(phys_) * sim_.dt_sim; }
    UavState& uav() { return uav_; }
    const UavState& uav() const { return uav_; }
    const PlatformState& platform() const { return platform_; }
    const RelativeObservation& observation() const { return obs_; }
    const ScenarioSpec& scenario() const { return scenario_; }
    const DerivedHyperparams& hyperparams() const { return hp_; }

private:
    void update_observation() {
        RelativeObservation o = relative_state(uav_, platform_);
        if (noise_ && noise_rng_) o = add_noise(o, *noise_, *noise_rng_);
        o.a_c = filtered_accel(filter_, o.v_c, sim_.dt_obs());
        obs_ = o;
    }

    ScenarioSpec scenario_;
    DerivedHyperparams hp_;
    SimParams sim_;
    PlatformMotionFn platform_fn_;
    VehicleParams vparams_;
    UavState uav_;
    PlatformState platform_;
    PidState yaw_pid_, vz_pid_;
    AccelFilter filter_;
    RelativeObservation obs_;
    const NoiseModel* noise_;
    Rng* noise_rng_;
    long phys_ = 0;
    long obs_every_ = 1;
    long next_obs_phys_ = 0;
    double next_agent_time_ = 0.0;
};

}  // namespace mrl
