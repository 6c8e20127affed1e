#pragma once

#include <cstdint>

namespace relfree {

// splitmix64. Used instead of <random> engines so that seeded runs are
// bit-identical across platforms and standard library versions.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound); bound > 0. Modulo bias is irrelevant for
  // the small bounds used here.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  // Uniform value in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }
};

}  // namespace relfree
