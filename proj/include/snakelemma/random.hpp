#pragma once

#include <cstdint>
#include <random>

namespace snakelemma {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// bounded draws go through uniform_int below to stay reproducible per seed.
using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

inline bool coin(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

/// splitmix64 step; derives independent child seeds from a parent seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace snakelemma
