#pragma once

#include <cstdint>
#include <random>

namespace rootnot {

// Every learner, sampler and oracle owns exactly one of these.
using RandomStream = std::mt19937_64;

// Derives a stream from a user seed. The salt separates streams that share
// a seed but serve different roles (e.g. the quantum and classical learner).
inline RandomStream make_stream(std::uint64_t seed, std::uint64_t salt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  return RandomStream(seq);
}

// Uniform double in [0, 1) with 53 random bits. Used instead of
// std::uniform_real_distribution so sampled sequences do not depend on the
// standard library's distribution implementation.
inline double uniform01(RandomStream &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool fair_bit(RandomStream &rng) { return (rng() >> 63) != 0; }

}  // namespace rootnot
