#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "kyc/luma.hpp"
#include "kyc/minhash.hpp"
#include "kyc/rng.hpp"

namespace kyc::test {

// Smooth random field (a handful of random 2D cosine waves, rescaled to
// [0,1]). Noise images hash fine too, but these behave like photographs:
// stable under resampling, sensitive to crops.
inline LumaMatrix smooth_field(uint64_t seed, int rows, int cols) {
  SplitMix64 g(seed);
  constexpr int kWaves = 6;
  double fr[kWaves], fc[kWaves], phase[kWaves], amp[kWaves];
  for (int k = 0; k < kWaves; ++k) {
    fr[k] = g.next_unit() * 4.0;
    fc[k] = g.next_unit() * 4.0;
    phase[k] = g.next_unit() * 2.0 * std::numbers::pi;
    amp[k] = g.next_unit();
  }
  LumaMatrix m = LumaMatrix::zeros(rows, cols);
  double lo = 1e300, hi = -1e300;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double v = 0.0;
      for (int k = 0; k < kWaves; ++k) {
        v += amp[k] *
             std::cos(2.0 * std::numbers::pi * (fr[k] * r + fc[k] * c) / std::max(rows, cols) +
                      phase[k]);
      }
      m.at(r, c) = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  for (double& v : m.values) v = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  return m;
}

inline LumaMatrix noise_image(uint64_t seed, int rows, int cols) {
  SplitMix64 g(seed);
  LumaMatrix m = LumaMatrix::zeros(rows, cols);
  for (double& v : m.values) v = g.next_unit();
  return m;
}

inline LumaMatrix crop(const LumaMatrix& m, int top, int left, int bottom, int right) {
  LumaMatrix out = LumaMatrix::zeros(m.rows - top - bottom, m.cols - left - right);
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) out.at(r, c) = m.at(r + top, c + left);
  }
  return out;
}

// Random k-subset of {0..63}.
inline OnesSet random_ones_set(SplitMix64& g, int k) {
  std::vector<uint32_t> perm = seeded_permutation(g.next(), 64);
  std::vector<int> positions(perm.begin(), perm.begin() + k);
  std::sort(positions.begin(), positions.end());
  return OnesSet::from_positions(positions);
}

// Independent Jaccard oracle over explicit position lists; deliberately
// avoids the bitmask/popcount path under test.
inline double oracle_jaccard(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> sa(a.begin(), a.end());
  std::set<int> sb(b.begin(), b.end());
  std::vector<int> uni, inter;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(uni));
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(inter));
  if (uni.empty()) return 1.0;
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

}  // namespace kyc::test
