#pragma once

#include <cstdint>

namespace windvar::rng {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based draw: a pure function of (seed, stream, counter). Any
/// execution order, serial or threaded, sees the same value for the same key.
constexpr std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return mix64(seed ^ mix64(stream ^ mix64(counter + 0x632be59bd9b4e019ULL)));
}

/// Uniform in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return static_cast<double>(draw_bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

}  // namespace windvar::rng
