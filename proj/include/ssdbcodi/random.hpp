#ifndef SSDBCODI_RANDOM_HPP
#define SSDBCODI_RANDOM_HPP

#include <cstdint>
#include <random>

namespace ssdbcodi {

// std::uniform_*_distribution output differs between standard libraries, so
// seeded draws go through these helpers to stay reproducible everywhere.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
    std::uint64_t x = rng();
    while (x > limit) x = rng();
    return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace ssdbcodi

#endif  // SSDBCODI_RANDOM_HPP
