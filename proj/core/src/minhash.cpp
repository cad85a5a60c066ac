#include "kyc/minhash.hpp"

#include <bit>

#include "kyc/errors.hpp"
#include "kyc/rng.hpp"

namespace kyc {

OnesSet OnesSet::from_positions(std::span<const int> positions) {
  uint64_t bits = 0;
  int prev = -1;
  for (int p : positions) {
    if (p < 0 || p > 63) throw DataError("OnesSet position out of [0,63]");
    if (p <= prev) throw DataError("OnesSet positions must be strictly ascending");
    bits |= (uint64_t{1} << p);
    prev = p;
  }
  return OnesSet{bits};
}

std::vector<int> OnesSet::positions() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(size()));
  uint64_t b = bits;
  while (b != 0) {
    int p = std::countr_zero(b);
    out.push_back(p);
    b &= b - 1;
  }
  return out;
}

int OnesSet::size() const { return std::popcount(bits); }

OnesSet ones_positions(PHash64 hash) { return OnesSet{hash.bits}; }

double jaccard(OnesSet a, OnesSet b) {
  int uni = std::popcount(a.bits | b.bits);
  if (uni == 0) return 1.0;
  int inter = std::popcount(a.bits & b.bits);
  return static_cast<double>(inter) / static_cast<double>(uni);
}

PermutationSet::PermutationSet(uint64_t seed) : seed_(seed) {
  for (int k = 0; k < kSignatureLength; ++k) {
    std::vector<uint32_t> perm = seeded_permutation(mix64(seed, static_cast<uint64_t>(k)), 64);
    for (int e = 0; e < 64; ++e) {
      perms_[k][e] = static_cast<uint8_t>(perm[e]);
    }
  }
}

MinHashSignature minhash_signature(OnesSet set, const PermutationSet& perms) {
  MinHashSignature sig;
  if (set.empty()) {
    sig.minima.fill(kMinhashSentinel);
    sig.empty_flag = true;
    return sig;
  }
  sig.empty_flag = false;
  for (int k = 0; k < kSignatureLength; ++k) {
    uint32_t best = kMinhashSentinel;
    uint64_t b = set.bits;
    while (b != 0) {
      int e = std::countr_zero(b);
      b &= b - 1;
      uint32_t v = perms.apply(k, e);
      if (v < best) best = v;
    }
    sig.minima[k] = best;
  }
  return sig;
}

MinHashSignature minhash_signature(OnesSet set, uint64_t seed) {
  return minhash_signature(set, PermutationSet(seed));
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
  int matches = 0;
  for (int k = 0; k < kSignatureLength; ++k) {
    if (a.minima[k] == b.minima[k]) ++matches;
  }
  return static_cast<double>(matches) / kSignatureLength;
}

}  // namespace kyc
