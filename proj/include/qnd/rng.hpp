#pragma once

// Portable seeded randomness.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++ standard.
// Streams: each independent unit of work (a theta point, input family, input
// state, oracle trial, ...) gets its own engine seeded with
//   stream_seed(seed, k1, k2, ...) = splitmix64 fold of the keys,
// so results never depend on scheduling order or worker count.
// Uniform variates use the top 53 bits of one engine draw.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace qnd {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t s = splitmix64(seed);
    for (std::uint64_t k : keys) s = splitmix64(s ^ splitmix64(k));
    return s;
}

inline std::uint64_t key_of(double v) noexcept { return std::bit_cast<std::uint64_t>(v); }

inline Engine make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    return Engine(stream_seed(seed, keys));
}

/// Uniform double in [0, 1).
inline double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

}  // namespace qnd
