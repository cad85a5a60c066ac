#include "kyc/luma.hpp"

#include <algorithm>
#include <cmath>

namespace kyc {

LumaMatrix LumaMatrix::zeros(int rows, int cols) {
  LumaMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.values.assign(static_cast<size_t>(rows) * cols, 0.0);
  return m;
}

void validate(const LumaMatrix& m) {
  if (m.rows < 1 || m.cols < 1) {
    throw DataError("LumaMatrix dimensions must be >= 1");
  }
  if (m.values.size() != static_cast<size_t>(m.rows) * m.cols) {
    throw DataError("LumaMatrix value count does not match rows*cols");
  }
  for (double v : m.values) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw DataError("LumaMatrix value out of [0,1]");
    }
  }
}

LumaMatrix bilinear_resize(const LumaMatrix& src, int out_rows, int out_cols) {
  validate(src);
  if (out_rows < 1 || out_cols < 1) {
    throw DataError("resize target dimensions must be >= 1");
  }

  LumaMatrix dst = LumaMatrix::zeros(out_rows, out_cols);
  const double sr = static_cast<double>(src.rows) / out_rows;
  const double sc = static_cast<double>(src.cols) / out_cols;

  for (int r = 0; r < out_rows; ++r) {
    double fy = (r + 0.5) * sr - 0.5;
    fy = std::clamp(fy, 0.0, static_cast<double>(src.rows - 1));
    int y0 = static_cast<int>(std::floor(fy));
    int y1 = std::min(y0 + 1, src.rows - 1);
    double wy = fy - y0;

    for (int c = 0; c < out_cols; ++c) {
      double fx = (c + 0.5) * sc - 0.5;
      fx = std::clamp(fx, 0.0, static_cast<double>(src.cols - 1));
      int x0 = static_cast<int>(std::floor(fx));
      int x1 = std::min(x0 + 1, src.cols - 1);
      double wx = fx - x0;

      double top = src.at(y0, x0) * (1.0 - wx) + src.at(y0, x1) * wx;
      double bot = src.at(y1, x0) * (1.0 - wx) + src.at(y1, x1) * wx;
      dst.at(r, c) = top * (1.0 - wy) + bot * wy;
    }
  }
  return dst;
}

}  // namespace kyc
