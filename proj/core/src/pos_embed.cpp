#include <cmath>

#include "kyc/binio.hpp"
#include "kyc/errors.hpp"
#include "kyc/rope.hpp"

namespace kyc {

PosEmbedGrid PosEmbedGrid::zeros(long rows, long cols, long dim) {
  PosEmbedGrid g;
  g.rows = rows;
  g.cols = cols;
  g.dim = dim;
  g.values.assign(static_cast<size_t>(rows) * cols * dim, 0.0f);
  return g;
}

PosEmbedGrid interpolate_pos_embed(const PosEmbedGrid& grid, long target_rows, long target_cols) {
  if (grid.rows < 1 || grid.cols < 1 || grid.dim < 1) {
    throw DataError("position embedding grid must be non-empty");
  }
  if (grid.values.size() != static_cast<size_t>(grid.rows) * grid.cols * grid.dim) {
    throw DataError("position embedding value count mismatch");
  }
  if (target_rows < 1 || target_cols < 1) {
    throw DataError("interpolation target must be >= 1x1");
  }

  PosEmbedGrid out = PosEmbedGrid::zeros(target_rows, target_cols, grid.dim);
  // Corner-aligned source coordinate for output index i: i * (S-1) / (T-1).
  auto src_coord = [](long i, long src_n, long dst_n) {
    if (dst_n == 1 || src_n == 1) return 0.0;
    return static_cast<double>(i) * (src_n - 1) / (dst_n - 1);
  };

  for (long r = 0; r < target_rows; ++r) {
    double fy = src_coord(r, grid.rows, target_rows);
    long y0 = static_cast<long>(std::floor(fy));
    long y1 = std::min(y0 + 1, grid.rows - 1);
    double wy = fy - y0;
    for (long c = 0; c < target_cols; ++c) {
      double fx = src_coord(c, grid.cols, target_cols);
      long x0 = static_cast<long>(std::floor(fx));
      long x1 = std::min(x0 + 1, grid.cols - 1);
      double wx = fx - x0;
      for (long d = 0; d < grid.dim; ++d) {
        double top = grid.at(y0, x0, d) * (1.0 - wx) + grid.at(y0, x1, d) * wx;
        double bot = grid.at(y1, x0, d) * (1.0 - wx) + grid.at(y1, x1, d) * wx;
        out.at(r, c, d) = static_cast<float>(top * (1.0 - wy) + bot * wy);
      }
    }
  }
  return out;
}

std::vector<uint8_t> serialize(const PosEmbedGrid& grid) {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(grid.rows));
  w.u32(static_cast<uint32_t>(grid.cols));
  w.u32(static_cast<uint32_t>(grid.dim));
  for (float v : grid.values) w.f32(v);
  return w.take();
}

PosEmbedGrid deserialize_pos_embed(const std::vector<uint8_t>& bytes) {
  ByteReader r(bytes);
  PosEmbedGrid g;
  g.rows = r.u32();
  g.cols = r.u32();
  g.dim = r.u32();
  size_t n = static_cast<size_t>(g.rows) * g.cols * g.dim;
  g.values.resize(n);
  for (size_t i = 0; i < n; ++i) g.values[i] = r.f32();
  if (r.remaining() != 0) throw FormatError("trailing bytes after position embedding grid");
  return g;
}

void save_pos_embed(const std::string& path, const PosEmbedGrid& grid) {
  write_file_bytes(path, serialize(grid));
}

PosEmbedGrid load_pos_embed(const std::string& path) {
  return deserialize_pos_embed(read_file_bytes(path));
}

}  // namespace kyc
