#pragma once

#include <cstdint>

#include "kyc/luma.hpp"

namespace kyc {

// 64-bit perceptual hash. Bit i (LSB = bit 0) corresponds to coefficient i in
// row-major order over the 8x8 low-frequency DCT block, so bit 0 is the DC
// coefficient.
struct PHash64 {
  uint64_t bits = 0;

  friend bool operator==(PHash64 a, PHash64 b) { return a.bits == b.bits; }
};

// Classic DCT perceptual hash: bilinear resample to 32x32, orthonormal 2D
// DCT-II, keep the 8x8 lowest-frequency block, threshold every coefficient
// (DC included) against the median of the 63 AC coefficients with a strict
// comparison.
PHash64 compute_phash(const LumaMatrix& image);

int hamming_distance(PHash64 a, PHash64 b);

}  // namespace kyc
