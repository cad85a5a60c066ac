#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace kyc {

// Deterministic 64-bit generator (splitmix64). Every seeded code path in the
// library draws from this so that identical seeds give bit-identical results
// on any platform; std::shuffle and friends are implementation-defined and
// must not be used where reproducibility is promised.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound). Modulo bias is irrelevant here: the contract is
  // determinism, not statistical perfection.
  uint64_t next_below(uint64_t bound) { return next() % bound; }

  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

// Stable combiner for deriving independent streams from (seed, lane, ...).
inline uint64_t mix64(uint64_t a, uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
  return g.next();
}

// Seeded Fisher-Yates permutation of {0..n-1}, explicit so the byte-level
// result is fixed forever.
inline std::vector<uint32_t> seeded_permutation(uint64_t seed, uint32_t n) {
  std::vector<uint32_t> perm(n);
  for (uint32_t i = 0; i < n; ++i) perm[i] = i;
  SplitMix64 g(seed);
  for (uint32_t i = n; i > 1; --i) {
    uint64_t j = g.next_below(i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace kyc
