#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace surrox {

/// One step of the splitmix64 generator; advances `state`.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed for an independent stream identified by (seed, path...). Streams
/// depend only on their identifiers, never on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t state = seed;
    std::uint64_t out = splitmix64(state);
    for (std::uint64_t id : path) {
        state ^= id + 0x632BE59BD9B4E019ULL + (out << 6) + (out >> 2);
        out = splitmix64(state);
    }
    return out;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    return Rng(derive_seed(seed, path));
}

}  // namespace surrox
