#pragma once

#include <cstdint>

namespace toric {

/// splitmix64: tiny splittable PRNG with a fully specified update, so seeded
/// runs reproduce bit-identically on every platform.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Integer in [0, bound), bound > 0. Modulo bias is irrelevant at the
  /// bounds used here (tiny versus 2^64).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  SplitMix64 split() { return SplitMix64(next()); }
};

}  // namespace toric
