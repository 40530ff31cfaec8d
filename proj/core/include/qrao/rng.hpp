#pragma once

#include <cstdint>
#include <random>

namespace qrao {

// splitmix64 step; used both as a stream hasher for deriving child seeds
// and as the scrambler recommended for seeding other generators.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable child-seed derivation: fold words into a splitmix64 stream.
// Unlike std::hash this is pinned by the implementation, so experiment
// records stay reproducible across builds.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> words) {
    std::uint64_t s = master ^ 0xd1b54a32d192ed03ULL;
    for (std::uint64_t w : words) {
        s ^= splitmix64(s) + w;
        (void)splitmix64(s);
    }
    return splitmix64(s);
}

// mt19937_64 has a standardized sequence; the distributions below avoid
// std::uniform_*_distribution, whose output is implementation-defined.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    return Rng(splitmix64(s));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) via rejection sampling.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % bound;
}

}  // namespace qrao
