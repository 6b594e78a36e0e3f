#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace mrl {

/// SplitMix64 finalizer, used to derive well-separated seeds from a master
/// seed plus a list of integer tags (curriculum step, episode, purpose, ...).
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> tags) {
    uint64_t s = splitmix64(master);
    for (uint64_t t : tags) {
        s = splitmix64(s ^ (t + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

/// Seeded RNG stream with portable derived distributions. All draws go
/// through uniform01 so sequences depend only on the mt19937_64 output,
/// not on library-specific distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). Modulo bias is negligible for small n.
    int uniform_int(int n) { return static_cast<int>(eng_() % static_cast<uint64_t>(n)); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mrl
