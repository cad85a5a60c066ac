#include "kyc/phash.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

namespace kyc {

namespace {

constexpr int kResample = 32;
constexpr int kBlock = 8;

// Orthonormal DCT-II basis factors for N = 32, evaluated lazily once.
struct DctTables {
  // cos((2n+1) k pi / 2N) for k in [0, kBlock), n in [0, kResample)
  std::array<std::array<double, kResample>, kBlock> cosines;
  std::array<double, kBlock> scale;

  DctTables() {
    for (int k = 0; k < kBlock; ++k) {
      scale[k] = (k == 0) ? std::sqrt(1.0 / kResample) : std::sqrt(2.0 / kResample);
      for (int n = 0; n < kResample; ++n) {
        cosines[k][n] =
            std::cos((2.0 * n + 1.0) * k * std::numbers::pi / (2.0 * kResample));
      }
    }
  }
};

const DctTables& tables() {
  static const DctTables t;
  return t;
}

}  // namespace

PHash64 compute_phash(const LumaMatrix& image) {
  LumaMatrix small = bilinear_resize(image, kResample, kResample);
  const DctTables& t = tables();

  // Row pass: DCT along each row, keeping the first kBlock coefficients.
  std::array<std::array<double, kBlock>, kResample> rowpass{};
  for (int r = 0; r < kResample; ++r) {
    for (int k = 0; k < kBlock; ++k) {
      double acc = 0.0;
      for (int n = 0; n < kResample; ++n) {
        acc += small.at(r, n) * t.cosines[k][n];
      }
      rowpass[r][k] = acc * t.scale[k];
    }
  }

  // Column pass over the kept columns. Coefficients snap to a 1e-9 grid so
  // analytically-zero frequencies (flat images) threshold as exact zeros
  // instead of rounding noise.
  std::array<double, kBlock * kBlock> block{};
  for (int c = 0; c < kBlock; ++c) {
    for (int k = 0; k < kBlock; ++k) {
      double acc = 0.0;
      for (int n = 0; n < kResample; ++n) {
        acc += rowpass[n][c] * t.cosines[k][n];
      }
      block[static_cast<size_t>(k) * kBlock + c] = std::round(acc * t.scale[k] * 1e9) * 1e-9;
    }
  }

  // Median of the 63 AC coefficients (DC excluded).
  std::array<double, kBlock * kBlock - 1> ac{};
  std::copy(block.begin() + 1, block.end(), ac.begin());
  std::nth_element(ac.begin(), ac.begin() + ac.size() / 2, ac.end());
  const double median = ac[ac.size() / 2];

  uint64_t bits = 0;
  for (int i = 0; i < kBlock * kBlock; ++i) {
    if (block[i] > median) bits |= (uint64_t{1} << i);
  }
  return PHash64{bits};
}

int hamming_distance(PHash64 a, PHash64 b) {
  return std::popcount(a.bits ^ b.bits);
}

}  // namespace kyc
