#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace leaguestat::rng {

// SplitMix64. Counter-based state walk with a strong output mixer; streams
// for independent simulation units are derived by folding identifiers into
// the seed (see match_stream / split below), so results do not depend on
// the order in which units are evaluated.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (uses exactly two draws).
    double normal() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0,1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Binomial(n, p) as a sum of threshold comparisons: one 64-bit draw per
    /// trial, so the draw count is fixed and streams stay aligned.
    int binomial(int n, double p) {
        if (p <= 0.0) {
            for (int i = 0; i < n; ++i) next();
            return 0;
        }
        if (p >= 1.0) {
            for (int i = 0; i < n; ++i) next();
            return n;
        }
        const auto threshold =
            static_cast<std::uint64_t>(p * 18446744073709551616.0 /* 2^64 */);
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            if (next() < threshold) ++hits;
        }
        return hits;
    }

private:
    std::uint64_t state_;
};

/// Derives a child stream seed by folding `id` into `seed` through the
/// SplitMix64 mixer. split(split(seed, a), b) defines a documented,
/// order-insensitive hierarchy of streams.
inline std::uint64_t split(std::uint64_t seed, std::uint64_t id) {
    SplitMix64 g(seed ^ (0xA0761D6478BD642Full + id * 0xE7037ED1A0B428DBull));
    return g.next();
}

/// Stream for one simulated match: (seed, season, tier, day, match-in-day).
inline std::uint64_t match_stream(std::uint64_t seed, std::uint64_t season,
                                  std::uint64_t tier, std::uint64_t day,
                                  std::uint64_t match) {
    return split(split(split(split(seed, season), tier), day), match);
}

inline constexpr const char* kAlgorithm = "splitmix64/match-stream-v1";

}  // namespace leaguestat::rng
