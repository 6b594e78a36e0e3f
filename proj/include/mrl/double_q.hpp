#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mrl/discretization.hpp"
#include "mrl/rng.hpp"
#include "mrl/vehicle.hpp"

namespace mrl {

/// Visit-count based learning rate max((n_c + 1)^-omega, alpha_min).
struct LearningRateParams {
    double omega = 0.51;
    double alpha_min = 0.02949;
};

inline double learning_rate(uint64_t n_c, const LearningRateParams& p) {
    return std::max(std::pow(static_cast<double>(n_c) + 1.0, -p.omega), p.alpha_min);
}

/// Exploration schedule: full exploration until hold_until, then linear
/// annealing to eps_final at anneal_until. Curriculum steps after the first
/// train greedily (epsilon = 0).
struct ExplorationSchedule {
    int hold_until = 800;
    int anneal_until = 2000;
    double eps_final = 0.01;
};

inline double epsilon_at(int episode, int curriculum_step, const ExplorationSchedule& s) {
    if (episode < 0) throw std::invalid_argument("epsilon_at: episode must be >= 0");
    if (curriculum_step > 0) return 0.0;
    if (episode < s.hold_until) return 1.0;
    if (episode >= s.anneal_until) return s.eps_final;
    const double frac = static_cast<double>(episode - s.hold_until) /
                        static_cast<double>(s.anneal_until - s.hold_until);
    return 1.0 + (s.eps_final - 1.0) * frac;
}

/// Two dense action-value tables plus shared visit counts for one curriculum
/// step, indexed by (p_d, v_d, a_d, i_theta, action).
class QTablePair {
public:
    QTablePair() = default;
    explicit QTablePair(int n_theta)
        : n_theta_(n_theta),
          q_a_(size_t(27) * (2 * n_theta + 1) * kNumActions, 0.0),
          q_b_(q_a_.size(), 0.0),
          visits_(q_a_.size(), 0) {}

    int n_theta() const { return n_theta_; }
    size_t size() const { return q_a_.size(); }

    size_t index(const DiscreteState& s, int action) const {
        return ((((static_cast<size_t>(s.p_d) * 3 + s.v_d) * 3 + s.a_d) * (2 * n_theta_ + 1) +
                 s.i_theta) *
                    kNumActions +
                action);
    }

    double& q_a(const DiscreteState& s, int a) { return q_a_[index(s, a)]; }
    double& q_b(const DiscreteState& s, int a) { return q_b_[index(s, a)]; }
    double q_a(const DiscreteState& s, int a) const { return q_a_[index(s, a)]; }
    double q_b(const DiscreteState& s, int a) const { return q_b_[index(s, a)]; }
    double q_sum(const DiscreteState& s, int a) const { return q_a_[index(s, a)] + q_b_[index(s, a)]; }
    uint64_t& visits(const DiscreteState& s, int a) { return visits_[index(s, a)]; }
    uint64_t visits(const DiscreteState& s, int a) const { return visits_[index(s, a)]; }

    std::vector<double>& raw_a() { return q_a_; }
    std::vector<double>& raw_b() { return q_b_; }
    std::vector<uint64_t>& raw_visits() { return visits_; }
    const std::vector<double>& raw_a() const { return q_a_; }
    const std::vector<double>& raw_b() const { return q_b_; }
    const std::vector<uint64_t>& raw_visits() const { return visits_; }

    /// Greedy action on q_a + q_b; ties broken uniformly at random.
    int greedy_action(const DiscreteState& s, Rng& rng) const {
        std::array<double, kNumActions> v{};
        for (int a = 0; a < kNumActions; ++a) v[a] = q_sum(s, a);
        const double best = *std::max_element(v.begin(), v.end());
        std::array<int, kNumActions> ties{};
        int n_ties = 0;
        for (int a = 0; a < kNumActions; ++a)
            if (v[a] == best) ties[n_ties++] = a;
        return n_ties == 1 ? ties[0] : ties[rng.uniform_int(n_ties)];
    }

private:
    int n_theta_ = 0;
    std::vector<double> q_a_, q_b_;
    std::vector<uint64_t> visits_;
};

struct ActionChoice {
    int action = 0;
    bool exploratory = false;
};

/// Epsilon-greedy selection over q_a + q_b.
inline ActionChoice select_action(const DiscreteState& s, const QTablePair& tables, double epsilon,
                                  Rng& explore_rng, Rng& tie_rng) {
    if (epsilon > 0.0 && explore_rng.uniform01() < epsilon)
        return {explore_rng.uniform_int(kNumActions), true};
    return {tables.greedy_action(s, tie_rng), false};
}

/// One Double Q-Learning update. A fair coin picks the table to update; the
/// other table evaluates the greedy bootstrap action. When bootstrap_tables
/// is given, the next-state value is read from it instead (used when the
/// next observation maps to a different curriculum step). Visit counts are
/// shared between the two tables and incremented once per update; the
/// learning rate uses the count before the increment.
inline void double_q_update(QTablePair& tables, const DiscreteState& s, int action, double reward,
                            const std::optional<DiscreteState>& next, double gamma,
                            const LearningRateParams& lr, Rng& coin_rng,
                            const QTablePair* bootstrap_tables = nullptr) {
    const QTablePair& boot = bootstrap_tables ? *bootstrap_tables : tables;
    const double alpha = learning_rate(tables.visits(s, action), lr);
    const bool update_a = coin_rng.uniform01() < 0.5;

    double target = reward;
    if (next) {
        const auto argmax = [&](const std::vector<double>& q) {
            int best_a = 0;
            double best = q[boot.index(*next, 0)];
            for (int a = 1; a < kNumActions; ++a) {
                const double v = q[boot.index(*next, a)];
                if (v > best) {
                    best = v;
                    best_a = a;
                }
            }
            return best_a;
        };
        if (update_a) {
            const int a_star = argmax(boot.raw_a());
            target += gamma * boot.raw_b()[boot.index(*next, a_star)];
        } else {
            const int a_star = argmax(boot.raw_b());
            target += gamma * boot.raw_a()[boot.index(*next, a_star)];
        }
    }

    double& q = update_a ? tables.q_a(s, action) : tables.q_b(s, action);
    q += alpha * (target - q);
    ++tables.visits(s, action);
}

}  // namespace mrl
