#pragma once

#include <cmath>
#include <stdexcept>

#include "mrl/discretization.hpp"
#include "mrl/vehicle.hpp"

namespace mrl {

/// Shaping weights. The four shaping weights are negative so that reducing
/// |p|, |v| or |theta| yields positive reward; w_suc/w_fail scale the
/// terminal reward relative to r_max.
struct RewardWeights {
    double w_p = -100.0;
    double w_v = -10.0;
    double w_theta = -1.55;
    double w_dur = -6.0;
    double w_suc = 2.6;
    double w_fail = -2.6;
};

/// Per-step reward scale. r_max is the maximum achievable non-terminal
/// reward while the motion complies with the step's limits; it drives the
/// Q-value scaling between curriculum steps.
struct RMax {
    double r_p_max = 0.0;
    double r_v_max = 0.0;
    double r_theta_max = 0.0;
    double r_dur_max = 0.0;  // negative
    double r_max = 0.0;
};

inline RMax compute_r_max(const RewardWeights& w, double v_lim, double a_lim, double dt,
                          double delta_theta, double theta_max) {
    if (dt <= 0.0) throw std::invalid_argument("compute_r_max: dt must be > 0");
    if (theta_max <= 0.0) throw std::invalid_argument("compute_r_max: theta_max must be > 0");
    RMax r;
    r.r_p_max = std::abs(w.w_p) * v_lim * dt;
    r.r_v_max = std::abs(w.w_v) * a_lim * dt;
    r.r_theta_max = std::abs(w.w_theta) * v_lim * delta_theta / theta_max;
    r.r_dur_max = w.w_dur * v_lim * dt;
    r.r_max = r.r_p_max + r.r_v_max + r.r_theta_max + r.r_dur_max;
    return r;
}

enum class TerminalKind { None, Success, Failure };

struct RewardBreakdown {
    double r_p = 0.0, r_v = 0.0, r_theta = 0.0, r_dur = 0.0, r_term = 0.0;
    double total = 0.0;
};

/// Shaped reward for one agent-period transition, scaled by the geometry of
/// the step the current observation maps to. Position/velocity terms are
/// clipped to +-r_p_max / +-r_v_max; the pitch term uses the setpoint angles
/// of the two pitch indices.
inline RewardBreakdown step_reward(const NormalizedObs1D& prev, int i_theta_prev,
                                   const NormalizedObs1D& cur, int i_theta_cur,
                                   const StepGeometry& geo, const RMax& rmax,
                                   const RewardWeights& w, double dt, double theta_max,
                                   int n_theta, TerminalKind terminal) {
    RewardBreakdown r;
    r.r_p = clip(w.w_p * (std::abs(cur.p_x) - std::abs(prev.p_x)), -rmax.r_p_max, rmax.r_p_max);
    r.r_v = clip(w.w_v * (std::abs(cur.v_x) - std::abs(prev.v_x)), -rmax.r_v_max, rmax.r_v_max);
    const double th_cur = pitch_from_index(i_theta_cur, theta_max, n_theta);
    const double th_prev = pitch_from_index(i_theta_prev, theta_max, n_theta);
    r.r_theta = w.w_theta * (std::abs(th_cur) - std::abs(th_prev)) / theta_max * geo.v_lim;
    r.r_dur = w.w_dur * geo.v_lim * dt;
    switch (terminal) {
        case TerminalKind::None: r.r_term = 0.0; break;
        case TerminalKind::Success: r.r_term = w.w_suc * rmax.r_max; break;
        case TerminalKind::Failure: r.r_term = w.w_fail * rmax.r_max; break;
    }
    r.total = r.r_p + r.r_v + r.r_theta + r.r_dur + r.r_term;
    return r;
}

}  // namespace mrl
