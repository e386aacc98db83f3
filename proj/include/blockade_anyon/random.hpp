#pragma once

// Counter-based draws: every value is a pure function of (seed, stream, index), so
// results do not depend on evaluation order or thread count.

#include <cstdint>

namespace blockade_anyon {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
inline constexpr double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline constexpr double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                                double lo, double hi) {
  return lo + (hi - lo) * uniform01(seed, stream, index);
}

}  // namespace blockade_anyon
