#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrl/discretization.hpp"
#include "mrl/double_q.hpp"
#include "mrl/episode.hpp"
#include "mrl/reward.hpp"
#include "mrl/scenario.hpp"

namespace mrl {

/// Everything immutable a training run needs.
struct TrainContext {
    ScenarioSpec scenario;
    DiscretizationParams disc;
    SimParams sim;
    TrainingParams training;
    RewardWeights weights;
    DerivedHyperparams hp;
};

inline TrainContext make_train_context(const ScenarioSpec& scenario,
                                       const DiscretizationParams& disc, const SimParams& sim,
                                       const TrainingParams& training, const RewardWeights& weights) {
    return TrainContext{scenario, disc, sim, training, weights, derive_hyperparams(scenario, disc)};
}

/// Per-step reward scales for the whole curriculum (v_lim = sigma^i, a_lim = 1).
inline std::vector<RMax> curriculum_r_max(const TrainContext& ctx) {
    std::vector<RMax> out;
    out.reserve(ctx.hp.n_cs + 1);
    for (int i = 0; i <= ctx.hp.n_cs; ++i) {
        const double v_lim = std::pow(ctx.disc.sigma, static_cast<double>(i));
        out.push_back(compute_r_max(ctx.weights, v_lim, 1.0, ctx.hp.dt_agent, ctx.hp.delta_theta,
                                    ctx.hp.theta_max));
    }
    return out;
}

/// Seed the next curriculum step's tables: Q-values scale with the ratio of
/// maximum per-step rewards, visit counts start fresh.
inline QTablePair scale_q_transfer(const QTablePair& q_result, const RMax& rmax_from,
                                   const RMax& rmax_to) {
    if (rmax_from.r_max == 0.0)
        throw std::invalid_argument("scale_q_transfer: source r_max must be nonzero");
    const double ratio = rmax_to.r_max / rmax_from.r_max;
    QTablePair next(q_result.n_theta());
    for (size_t i = 0; i < q_result.size(); ++i) {
        next.raw_a()[i] = q_result.raw_a()[i] * ratio;
        next.raw_b()[i] = q_result.raw_b()[i] * ratio;
    }
    return next;
}

/// Count states whose greedy argmax set changed across a transfer. Positive
/// scaling must preserve it; any violation indicates numeric trouble.
inline int count_transfer_argmax_changes(const QTablePair& before, const QTablePair& after) {
    int changes = 0;
    DiscreteState s;
    for (s.p_d = 0; s.p_d < 3; ++s.p_d)
        for (s.v_d = 0; s.v_d < 3; ++s.v_d)
            for (s.a_d = 0; s.a_d < 3; ++s.a_d)
                for (s.i_theta = 0; s.i_theta <= 2 * before.n_theta(); ++s.i_theta) {
                    double max_b = before.q_sum(s, 0), max_a = after.q_sum(s, 0);
                    for (int a = 1; a < kNumActions; ++a) {
                        max_b = std::max(max_b, before.q_sum(s, a));
                        max_a = std::max(max_a, after.q_sum(s, a));
                    }
                    for (int a = 0; a < kNumActions; ++a) {
                        if ((before.q_sum(s, a) == max_b) != (after.q_sum(s, a) == max_a)) {
                            ++changes;
                            break;
                        }
                    }
                }
    return changes;
}

/// Episode start position. The first curriculum step draws x from a normal
/// with sigma = p_max / 3 clipped to the fly zone (y = 0); later steps and
/// evaluation draw uniformly over the fly zone.
inline Vec3 initial_uav_position_uniform(const FlyZone& zone, double z_init, Rng& rng) {
    return {rng.uniform(-zone.x_max, zone.x_max), rng.uniform(-zone.y_max, zone.y_max), z_init};
}

inline Vec3 initial_uav_position(int step, const ScenarioSpec& scenario, double p_max,
                                 double z_init, Rng& rng) {
    if (step == 0) {
        const double x =
            clip(rng.normal(0.0, p_max / 3.0), -scenario.fly_zone.x_max, scenario.fly_zone.x_max);
        return {x, 0.0, z_init};
    }
    return initial_uav_position_uniform(scenario.fly_zone, z_init, rng);
}

enum class EpisodeOutcome { Success, FlyZoneExit, Timeout };

inline std::string to_string(EpisodeOutcome o) {
    switch (o) {
        case EpisodeOutcome::Success: return "success";
        case EpisodeOutcome::FlyZoneExit: return "flyzone_exit";
        case EpisodeOutcome::Timeout: return "timeout";
    }
    return "?";
}

struct EpisodeResult {
    EpisodeOutcome outcome = EpisodeOutcome::Timeout;
    double accumulated_reward = 0.0;
    int steps = 0;  // actions taken
    int exploratory_actions = 0;
};

// RNG purpose tags so every stream is independently derived from the master
// seed and any single episode is replayable in isolation.
namespace rng_stream {
inline constexpr uint64_t kInit = 1;
inline constexpr uint64_t kExplore = 2;
inline constexpr uint64_t kTieBreak = 3;
inline constexpr uint64_t kCoin = 4;
inline constexpr uint64_t kNoise = 5;
}  // namespace rng_stream

/// Run one training episode of the basis 1-D task for curriculum step
/// `step_index`. Observations map to the finest applicable step; actions,
/// rewards and value updates all use that step's tables and scaling, while
/// the update target is written into the table owning the previous state.
/// Success requires the latest step's goal state after an uninterrupted
/// dwell inside the latest step's region; leaving the fly zone fails the
/// episode; otherwise it times out at t_max with no terminal reward.
inline EpisodeResult run_episode(const TrainContext& ctx, const CurriculumGeometry& geo,
                                 const std::vector<RMax>& rmax, std::vector<QTablePair>& tables,
                                 int step_index, int episode_index, uint64_t master_seed,
                                 const PlatformMotionFn& platform_fn) {
    const DerivedHyperparams& hp = ctx.hp;
    const int latest = geo.latest_index();
    const double epsilon = epsilon_at(episode_index, step_index, ctx.training.epsilon);

    Rng init_rng(derive_seed(master_seed, {uint64_t(step_index), uint64_t(episode_index), rng_stream::kInit}));
    Rng explore_rng(derive_seed(master_seed, {uint64_t(step_index), uint64_t(episode_index), rng_stream::kExplore}));
    Rng tie_rng(derive_seed(master_seed, {uint64_t(step_index), uint64_t(episode_index), rng_stream::kTieBreak}));
    Rng coin_rng(derive_seed(master_seed, {uint64_t(step_index), uint64_t(episode_index), rng_stream::kCoin}));

    UavState init;
    init.position = initial_uav_position(step_index, ctx.scenario, hp.p_max, ctx.training.z_init, init_rng);
    init.vz_ref = ctx.training.vz_setpoint;
    SimWorld world(ctx.scenario, hp, ctx.sim, platform_fn, init);

    int i_theta = ctx.disc.n_theta;
    bool have_prev = false;
    NormalizedObs1D prev_obs;
    DiscreteState prev_s;
    int prev_action = 0;
    int consecutive_latest = 0;

    EpisodeResult result;
    for (;;) {
        world.advance_until_agent_tick();
        const UavState& uav = world.uav();
        if (!std::isfinite(uav.position.x) || !std::isfinite(uav.velocity.x) ||
            !std::isfinite(uav.position.z))
            throw std::runtime_error("run_episode: non-finite vehicle state (integrator misconfigured?)");

        const RawObs1D raw = axis_project(world.observation(), Axis::Longitudinal);
        const NormalizedObs1D obs = normalize_clip(raw.p, raw.v, raw.a, hp.p_max, hp.v_max, hp.a_max);
        const DiscreteState s = map_to_discrete(obs, geo, i_theta);

        consecutive_latest = s.step == latest ? consecutive_latest + 1 : 0;
        const double dwell = consecutive_latest * hp.dt_agent;

        const bool fz_exit = !in_fly_zone(uav.position, ctx.scenario.fly_zone);
        const bool success =
            !fz_exit && is_goal(s, latest) && dwell >= ctx.training.goal_dwell_s - 1e-9;
        const bool timeout = !fz_exit && !success && world.t() >= ctx.training.t_max - 1e-9;
        const TerminalKind term = fz_exit   ? TerminalKind::Failure
                                  : success ? TerminalKind::Success
                                            : TerminalKind::None;

        if (have_prev) {
            const RewardBreakdown rb =
                step_reward(prev_obs, prev_s.i_theta, obs, s.i_theta, geo.steps[s.step],
                            rmax[s.step], ctx.weights, hp.dt_agent, hp.theta_max, ctx.disc.n_theta,
                            term);
            result.accumulated_reward += rb.total;
            const bool terminal_update = fz_exit || success || timeout;
            double_q_update(tables[prev_s.step], prev_s, prev_action, rb.total,
                            terminal_update ? std::nullopt : std::make_optional(s),
                            ctx.training.gamma, ctx.training.lr, coin_rng, &tables[s.step]);
        }

        if (fz_exit) {
            result.outcome = EpisodeOutcome::FlyZoneExit;
            return result;
        }
        if (success) {
            result.outcome = EpisodeOutcome::Success;
            return result;
        }
        if (timeout) {
            result.outcome = EpisodeOutcome::Timeout;
            return result;
        }

        const ActionChoice choice = select_action(s, tables[s.step], epsilon, explore_rng, tie_rng);
        result.exploratory_actions += choice.exploratory ? 1 : 0;
        ++result.steps;
        prev_obs = obs;
        prev_s = s;
        prev_action = choice.action;
        have_prev = true;
        i_theta = apply_action(i_theta, static_cast<PitchAction>(choice.action), ctx.disc.n_theta);
        world.uav().pitch_ref = pitch_from_index(i_theta, hp.theta_max, ctx.disc.n_theta);
    }
}

struct EpisodeLogRow {
    int global_episode = 0;
    int step = 0;
    int episode_in_step = 0;
    EpisodeOutcome outcome = EpisodeOutcome::Timeout;
    double reward = 0.0;
    int steps = 0;
    double epsilon = 0.0;
};

struct StepTrainStats {
    int episodes = 0;
    bool converged = false;
    double wall_ms = 0.0;
    long exploratory_actions = 0;
};

struct TrainingRun {
    uint64_t seed = 0;
    DerivedHyperparams hp;
    CurriculumGeometry geometry;  // final geometry, latest = n_cs
    std::vector<RMax> rmax;
    std::vector<QTablePair> tables;
    std::vector<StepTrainStats> step_stats;
    std::vector<EpisodeLogRow> episode_log;
    int transfer_violations = 0;

    bool converged() const {
        for (const auto& s : step_stats)
            if (!s.converged) return false;
        return !step_stats.empty();
    }
};

/// Train the full sequential curriculum: step 0 from scratch, every later
/// step seeded by reward-ratio-scaled Q-tables, each step running until the
/// goal state is reached in at least `success_threshold` of the trailing
/// `success_window` episodes (the window must fill first). A step hitting
/// the episode cap leaves the run marked non-converged; the tables trained
/// so far are still returned.
inline TrainingRun train_curriculum(const TrainContext& ctx, uint64_t seed) {
    TrainingRun run;
    run.seed = seed;
    run.hp = ctx.hp;
    run.rmax = curriculum_r_max(ctx);
    run.tables.emplace_back(ctx.disc.n_theta);

    const PlatformMotionFn platform_fn = closed_form_platform(ctx.scenario.trajectory);
    int global_episode = 0;

    for (int step = 0; step <= ctx.hp.n_cs; ++step) {
        const CurriculumGeometry geo =
            make_curriculum_geometry(step + 1, ctx.disc.sigma, ctx.disc.sigma_a);
        if (step > 0) {
            QTablePair next = scale_q_transfer(run.tables[step - 1], run.rmax[step - 1], run.rmax[step]);
            run.transfer_violations += count_transfer_argmax_changes(run.tables[step - 1], next);
            run.tables.push_back(std::move(next));
        }

        StepTrainStats stats;
        std::deque<bool> window;
        int window_successes = 0;
        const auto t_start = std::chrono::steady_clock::now();

        for (int episode = 0; episode < ctx.training.episode_cap; ++episode) {
            const EpisodeResult res =
                run_episode(ctx, geo, run.rmax, run.tables, step, episode, seed, platform_fn);
            ++stats.episodes;
            if (step > 0) stats.exploratory_actions += res.exploratory_actions;

            run.episode_log.push_back({global_episode++, step, episode, res.outcome,
                                       res.accumulated_reward, res.steps,
                                       epsilon_at(episode, step, ctx.training.epsilon)});

            const bool success = res.outcome == EpisodeOutcome::Success;
            window.push_back(success);
            window_successes += success ? 1 : 0;
            if (static_cast<int>(window.size()) > ctx.training.success_window) {
                window_successes -= window.front() ? 1 : 0;
                window.pop_front();
            }
            if (static_cast<int>(window.size()) == ctx.training.success_window &&
                window_successes >=
                    ctx.training.success_threshold * ctx.training.success_window - 1e-9) {
                stats.converged = true;
                break;
            }
        }

        stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                  t_start)
                            .count();
        run.step_stats.push_back(stats);
        if (!stats.converged) break;  // don't seed further steps from an unconverged table
    }

    run.geometry = make_curriculum_geometry(static_cast<int>(run.tables.size()), ctx.disc.sigma,
                                            ctx.disc.sigma_a);
    return run;
}

}  // namespace mrl
