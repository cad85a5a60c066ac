#include "kyc/rope.hpp"

#include <algorithm>
#include <cmath>

#include "kyc/errors.hpp"

namespace kyc {

std::vector<double> rope2d_rotate(std::span<const double> vec, long row, long col, double base) {
  if (vec.size() % 4 != 0 || vec.empty()) {
    throw DataError("rope2d vector length must be a positive multiple of 4");
  }
  const size_t pairs = vec.size() / 2;
  const size_t half = pairs / 2;  // pairs keyed to each axis

  std::vector<double> out(vec.size());
  for (size_t p = 0; p < pairs; ++p) {
    const bool row_axis = p < half;
    const size_t k = row_axis ? p : p - half;
    const double pos = static_cast<double>(row_axis ? row : col);
    const double theta = pos * std::pow(base, -2.0 * static_cast<double>(k) /
                                                  static_cast<double>(pairs));
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double a = vec[2 * p];
    const double b = vec[2 * p + 1];
    out[2 * p] = a * c - b * s;
    out[2 * p + 1] = a * s + b * c;
  }
  return out;
}

long RopeIndex3D::next_scalar() const {
  long next = 0;
  for (const Pos3& p : positions) {
    next = std::max({next, p.t + 1, p.h + 1, p.w + 1});
  }
  return next;
}

namespace {

void append_frame(RopeIndex3D& index, long start, long time_index, long grid_h, long grid_w) {
  for (long r = 0; r < grid_h; ++r) {
    for (long c = 0; c < grid_w; ++c) {
      index.positions.push_back({start + time_index, start + r, start + c});
    }
  }
}

}  // namespace

RopeIndex3D build_mrope_indices(const std::vector<Segment>& segments) {
  RopeIndex3D index;
  long cursor = 0;  // next scalar position

  for (const Segment& segment : segments) {
    if (const auto* text = std::get_if<TextSegment>(&segment)) {
      if (text->length < 0) throw DataError("negative text segment length");
      for (long i = 0; i < text->length; ++i) {
        index.positions.push_back({cursor, cursor, cursor});
        ++cursor;
      }
    } else if (const auto* image = std::get_if<ImageSegment>(&segment)) {
      append_frame(index, cursor, 0, image->plan.grid_h, image->plan.grid_w);
      cursor = index.next_scalar();
    } else {
      const VideoPlan& plan = std::get<VideoSegment>(segment).plan;
      long start = cursor;
      for (long f = 0; f < plan.frames(); ++f) {
        append_frame(index, start, plan.time_indices[f], plan.grid_h, plan.grid_w);
      }
      cursor = index.next_scalar();
    }
  }
  return index;
}

}  // namespace kyc
