#pragma once

#include <vector>

#include "kyc/errors.hpp"

namespace kyc {

// Row-major grayscale image with luminance values in [0, 1].
struct LumaMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // rows * cols, row-major

  double at(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }
  double& at(int r, int c) { return values[static_cast<size_t>(r) * cols + c]; }

  static LumaMatrix zeros(int rows, int cols);
};

// Throws DataError unless rows/cols >= 1, the value buffer matches, and every
// value is finite and in [0, 1].
void validate(const LumaMatrix& m);

// Bilinear resample with half-pixel center alignment (source coordinate of
// output pixel i is (i + 0.5) * in/out - 0.5, clamped to the image).
LumaMatrix bilinear_resize(const LumaMatrix& src, int out_rows, int out_cols);

}  // namespace kyc
