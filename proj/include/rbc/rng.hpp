#pragma once

#include <cstdint>
#include <random>

namespace rbc {

/// Every stochastic routine draws from one caller-owned engine; never shared across threads.
using Rng = std::mt19937_64;

/// Independent stream seed from (master, stream index) via splitmix64 finalization.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform draw on [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double unit_uniform(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

}  // namespace rbc
