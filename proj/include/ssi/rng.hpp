#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ssi {

// splitmix64 step; used both as a seed expander and as the counter-based
// stream derivation so that parallel trials are reproducible regardless of
// scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic RNG wrapper. Distributions are implemented explicitly
/// (not via std::uniform_real_distribution) so output streams depend only
/// on the seed, not on the standard library in use.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // Expand the seed so nearby seeds decorrelate.
        std::uint64_t s = seed;
        engine_.seed(splitmix64(s));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], unbiased via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Derive a child seed from a master seed and a path of counters.
    /// This is the declared counter-based scheme: the stream for trial t of
    /// sweep point (i, j) is derive(master, {i, j, t}) and never depends on
    /// evaluation order.
    static std::uint64_t derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        std::uint64_t state = master ^ 0x6a09e667f3bcc908ULL;
        (void)splitmix64(state);
        for (std::uint64_t token : path) {
            state ^= token + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2);
            (void)splitmix64(state);
        }
        std::uint64_t s = state;
        return splitmix64(s);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ssi
