#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mrl/observation.hpp"

namespace mrl {

/// General three-class discretization on [-x2, x2]:
///   0 on [-x2, -x1), 1 on [-x1, x1], 2 on (x1, x2].
/// Boundary semantics are exactly as written: the center class is closed,
/// the outer classes are half-open toward the center.
inline int discretize(double x, double x1, double x2) {
    if (!(0.0 < x1 && x1 < x2)) throw std::invalid_argument("discretize: need 0 < x1 < x2");
    if (x < -x2 || x > x2) throw std::out_of_range("discretize: |x| > x2");
    if (x < -x1) return 0;
    if (x <= x1) return 1;
    return 2;
}

/// Normalized limit and goal half-widths of one curriculum step.
///
/// Limits contract exponentially: p_lim = sigma^(2i), v_lim = sigma^i,
/// a_lim = 1. Goals are the next step's limits (beta_p = sigma^2,
/// beta_v = sigma, beta_a = 1) except on the step most recently added to
/// the sequence, where all three scale with 1/3 instead.
struct StepGeometry {
    int index = 0;
    double p_lim = 1.0, v_lim = 1.0, a_lim = 1.0;
    double p_goal = 0.0, v_goal = 0.0, a_goal = 0.0;
    bool is_latest = false;
};

inline StepGeometry geometry_for_step(int i, double sigma, double sigma_a, bool is_latest) {
    if (sigma <= 0.0 || sigma >= 1.0 || sigma_a <= 0.0 || sigma_a >= 1.0)
        throw std::invalid_argument("geometry_for_step: contraction factors must be in (0, 1)");
    StepGeometry g;
    g.index = i;
    g.p_lim = std::pow(sigma, 2.0 * i);
    g.v_lim = std::pow(sigma, static_cast<double>(i));
    g.a_lim = 1.0;
    g.is_latest = is_latest;
    if (is_latest) {
        g.p_goal = g.p_lim / 3.0;
        g.v_goal = g.v_lim / 3.0;
        g.a_goal = sigma_a / 3.0;
    } else {
        g.p_goal = sigma * sigma * g.p_lim;
        g.v_goal = sigma * g.v_lim;
        g.a_goal = sigma_a;
    }
    return g;
}

/// The full nested sequence; the last step is always the latest one.
struct CurriculumGeometry {
    std::vector<StepGeometry> steps;
    double sigma = 0.0;
    double sigma_a = 0.0;

    int latest_index() const { return static_cast<int>(steps.size()) - 1; }
};

inline CurriculumGeometry make_curriculum_geometry(int num_steps, double sigma, double sigma_a) {
    if (num_steps < 1) throw std::invalid_argument("make_curriculum_geometry: need >= 1 step");
    CurriculumGeometry geo;
    geo.sigma = sigma;
    geo.sigma_a = sigma_a;
    geo.steps.reserve(num_steps);
    for (int i = 0; i < num_steps; ++i)
        geo.steps.push_back(geometry_for_step(i, sigma, sigma_a, i == num_steps - 1));
    return geo;
}

/// Observation of one agent after multiresolution mapping.
struct DiscreteState {
    int step = 0;
    int p_d = 1, v_d = 1, a_d = 1;
    int i_theta = 0;
};

/// Map a normalized observation to the finest curriculum step whose limit
/// region contains it (position and velocity jointly; acceleration never
/// discriminates because a_lim = 1 everywhere), then discretize with that
/// step's goal/limit bounds.
inline DiscreteState map_to_discrete(const NormalizedObs1D& obs, const CurriculumGeometry& geo,
                                     int i_theta) {
    int step = 0;
    for (int j = static_cast<int>(geo.steps.size()) - 1; j >= 0; --j) {
        if (std::abs(obs.p_x) <= geo.steps[j].p_lim && std::abs(obs.v_x) <= geo.steps[j].v_lim) {
            step = j;
            break;
        }
    }
    const StepGeometry& g = geo.steps[step];
    DiscreteState ds;
    ds.step = step;
    ds.p_d = discretize(obs.p_x, g.p_goal, g.p_lim);
    ds.v_d = discretize(obs.v_x, g.v_goal, g.v_lim);
    ds.a_d = discretize(obs.a_x, g.a_goal, g.a_lim);
    ds.i_theta = i_theta;
    return ds;
}

/// Goal state (1,1,1,*) of the latest curriculum step.
inline bool is_goal(const DiscreteState& ds, int latest_index) {
    return ds.step == latest_index && ds.p_d == 1 && ds.v_d == 1 && ds.a_d == 1;
}

}  // namespace mrl
