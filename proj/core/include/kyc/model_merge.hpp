#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kyc {

struct Tensor {
  std::vector<long> dims;    // rank may be 0 (scalar); values.size() == product
  std::vector<float> values;

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

// Named parameter tensors; ordered so container writes are deterministic.
using ParamMap = std::map<std::string, Tensor>;

// Per-parameter convex combination of same-structure models. Weights default
// to uniform; given weights must be non-negative with a positive sum and are
// normalized internally. Throws DataError on name-set mismatch (listing the
// symmetric difference), shape mismatch (naming the parameter), or NaN
// values.
ParamMap merge_average(const std::vector<ParamMap>& models,
                       const std::optional<std::vector<double>>& weights = std::nullopt);

// KYPM1 checkpoint container: magic, entry count u64, then per entry name
// (u16 length + bytes), dtype tag u8 (0 = f32), rank u8, dims as u64s,
// little-endian f32 values.
std::vector<uint8_t> serialize(const ParamMap& params);
ParamMap deserialize_params(const std::vector<uint8_t>& bytes);
void save_params(const std::string& path, const ParamMap& params);
ParamMap load_params(const std::string& path);

}  // namespace kyc
