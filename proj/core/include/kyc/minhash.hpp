#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "kyc/phash.hpp"

namespace kyc {

// Set of set-bit positions of a 64-bit hash; the MinHash universe is {0..63}.
// Stored as a bitmask, exposed as a strictly ascending position list.
struct OnesSet {
  uint64_t bits = 0;

  static OnesSet from_bits(uint64_t bits) { return OnesSet{bits}; }
  // Validates strict ascent, no duplicates, range [0, 63].
  static OnesSet from_positions(std::span<const int> positions);

  std::vector<int> positions() const;
  int size() const;
  bool empty() const { return bits == 0; }

  friend bool operator==(OnesSet a, OnesSet b) { return a.bits == b.bits; }
};

OnesSet ones_positions(PHash64 hash);

// |a ∩ b| / |a ∪ b|. Both empty -> 1: two all-zero hashes are byte-identical
// images and must verify as duplicates.
double jaccard(OnesSet a, OnesSet b);

inline constexpr int kSignatureLength = 128;
inline constexpr uint32_t kMinhashSentinel = 0xFFFFFFFFU;

struct MinHashSignature {
  std::array<uint32_t, kSignatureLength> minima;
  bool empty_flag = false;

  friend bool operator==(const MinHashSignature& a, const MinHashSignature& b) {
    return a.empty_flag == b.empty_flag && a.minima == b.minima;
  }
};

// 128 seeded bijections of {0..63}. Permutation k is a Fisher-Yates shuffle
// driven by splitmix64 seeded with mix64(seed, k); the scheme is fixed so
// signatures are reproducible across runs and platforms.
class PermutationSet {
 public:
  explicit PermutationSet(uint64_t seed);

  uint64_t seed() const { return seed_; }
  uint32_t apply(int permutation, int element) const {
    return perms_[permutation][element];
  }

 private:
  uint64_t seed_;
  std::array<std::array<uint8_t, 64>, kSignatureLength> perms_;
};

// minima[k] = min over e in set of perm_k(e); the empty set maps every lane
// to the sentinel maximum.
MinHashSignature minhash_signature(OnesSet set, const PermutationSet& perms);
MinHashSignature minhash_signature(OnesSet set, uint64_t seed);

// Fraction of matching lanes; the unbiased MinHash estimate of Jaccard
// similarity. Two empty signatures estimate 1.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

}  // namespace kyc
