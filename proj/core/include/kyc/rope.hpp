#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kyc/vision_budget.hpp"

namespace kyc {

// 2D rotary embedding: the vector is split into d/2 two-element rotation
// pairs; the first d/4 pairs rotate by angles keyed to `row`, the remaining
// d/4 by angles keyed to `col`, with theta_k = pos * base^(-2k/(d/2)).
// Norm-preserving; attention inner products depend only on position deltas.
std::vector<double> rope2d_rotate(std::span<const double> vec, long row, long col,
                                  double base = 10000.0);

// Per-token (t, h, w) rotary position indices.
struct Pos3 {
  long t = 0;
  long h = 0;
  long w = 0;

  friend bool operator==(Pos3, Pos3) = default;
};

struct RopeIndex3D {
  std::vector<Pos3> positions;

  long next_scalar() const;  // 1 + running max over all channels, 0 if empty
};

struct TextSegment {
  long length = 0;
};
struct ImageSegment {
  ImagePlan plan;
};
struct VideoSegment {
  VideoPlan plan;
};
using Segment = std::variant<TextSegment, ImageSegment, VideoSegment>;

// Text tokens carry a scalar position on all three channels. A vision block
// starting at scalar position S gives frame f the time channel
// S + time_index[f] (images: a single frame with time index 0) and grid cell
// (r, c) the channels (S + r, S + c). Text after a vision block resumes at
// 1 + the running maximum over every prior channel.
RopeIndex3D build_mrope_indices(const std::vector<Segment>& segments);

// Resolution-adaptive position embedding grid.
struct PosEmbedGrid {
  long rows = 0;
  long cols = 0;
  long dim = 0;
  std::vector<float> values;  // rows * cols * dim, row-major, channel-minor

  float at(long r, long c, long d) const {
    return values[static_cast<size_t>((r * cols + c) * dim + d)];
  }
  float& at(long r, long c, long d) {
    return values[static_cast<size_t>((r * cols + c) * dim + d)];
  }

  static PosEmbedGrid zeros(long rows, long cols, long dim);
};

// Channel-wise bilinear resampling with corner alignment; corner vectors are
// preserved exactly and matching dims reproduce the input.
PosEmbedGrid interpolate_pos_embed(const PosEmbedGrid& grid, long target_rows, long target_cols);

// Packed f32 little-endian interchange with a (rows, cols, dim) u32 header.
std::vector<uint8_t> serialize(const PosEmbedGrid& grid);
PosEmbedGrid deserialize_pos_embed(const std::vector<uint8_t>& bytes);
void save_pos_embed(const std::string& path, const PosEmbedGrid& grid);
PosEmbedGrid load_pos_embed(const std::string& path);

}  // namespace kyc
