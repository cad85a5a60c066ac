#include "kyc/model_merge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kyc/binio.hpp"
#include "kyc/errors.hpp"

namespace kyc {

namespace {

size_t element_count(const Tensor& t) {
  size_t n = 1;
  for (long d : t.dims) n *= static_cast<size_t>(d);
  return n;
}

void check_structure(const ParamMap& reference, const ParamMap& model, size_t index) {
  if (reference.size() != model.size() ||
      !std::equal(reference.begin(), reference.end(), model.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    std::ostringstream diff;
    diff << "model " << index << " parameter names differ from model 0; symmetric difference:";
    for (const auto& [name, _] : reference) {
      if (!model.contains(name)) diff << " -" << name;
    }
    for (const auto& [name, _] : model) {
      if (!reference.contains(name)) diff << " +" << name;
    }
    throw DataError(diff.str());
  }
  for (const auto& [name, tensor] : model) {
    if (tensor.dims != reference.at(name).dims) {
      throw DataError("parameter '" + name + "' shape mismatch in model " + std::to_string(index));
    }
  }
}

}  // namespace

ParamMap merge_average(const std::vector<ParamMap>& models,
                       const std::optional<std::vector<double>>& weights) {
  if (models.empty()) throw DataError("merge needs at least one model");

  std::vector<double> w;
  if (weights) {
    if (weights->size() != models.size()) {
      throw ConfigError("weight count does not match model count");
    }
    double sum = 0.0;
    for (double v : *weights) {
      if (!std::isfinite(v) || v < 0.0) throw ConfigError("weights must be non-negative");
      sum += v;
    }
    if (!(sum > 0.0)) throw ConfigError("weights must sum to a positive value");
    for (double v : *weights) w.push_back(v / sum);
  } else {
    w.assign(models.size(), 1.0 / static_cast<double>(models.size()));
  }

  for (size_t i = 0; i < models.size(); ++i) {
    check_structure(models[0], models[i], i);
  }

  ParamMap merged;
  for (const auto& [name, first] : models[0]) {
    size_t n = first.values.size();
    if (n != element_count(first)) {
      throw DataError("parameter '" + name + "' value count does not match its dims");
    }
    Tensor out;
    out.dims = first.dims;
    out.values.assign(n, 0.0f);
    std::vector<double> acc(n, 0.0);
    for (size_t m = 0; m < models.size(); ++m) {
      const Tensor& t = models[m].at(name);
      if (t.values.size() != n) {
        throw DataError("parameter '" + name + "' value count mismatch in model " +
                        std::to_string(m));
      }
      for (size_t i = 0; i < n; ++i) {
        if (std::isnan(t.values[i])) {
          throw DataError("parameter '" + name + "' contains NaN in model " + std::to_string(m));
        }
        acc[i] += w[m] * static_cast<double>(t.values[i]);
      }
    }
    for (size_t i = 0; i < n; ++i) out.values[i] = static_cast<float>(acc[i]);
    merged.emplace(name, std::move(out));
  }
  return merged;
}

namespace {
constexpr char kMagic[] = "KYPM1";
constexpr size_t kMagicLen = 5;
constexpr uint8_t kDtypeF32 = 0;
}  // namespace

std::vector<uint8_t> serialize(const ParamMap& params) {
  ByteWriter w;
  w.bytes(kMagic, kMagicLen);
  w.u64(params.size());
  for (const auto& [name, tensor] : params) {
    if (tensor.values.size() != element_count(tensor)) {
      throw DataError("parameter '" + name + "' value count does not match its dims");
    }
    w.u16(static_cast<uint16_t>(name.size()));
    w.str(name);
    w.u8(kDtypeF32);
    w.u8(static_cast<uint8_t>(tensor.dims.size()));
    for (long d : tensor.dims) w.u64(static_cast<uint64_t>(d));
    for (float v : tensor.values) w.f32(v);
  }
  return w.take();
}

ParamMap deserialize_params(const std::vector<uint8_t>& bytes) {
  ByteReader r(bytes);
  if (r.remaining() < kMagicLen || r.str(kMagicLen) != kMagic) {
    throw FormatError("not a KYPM1 checkpoint container");
  }
  uint64_t count = r.u64();
  ParamMap params;
  for (uint64_t i = 0; i < count; ++i) {
    std::string name = r.str(r.u16());
    uint8_t dtype = r.u8();
    if (dtype != kDtypeF32) throw FormatError("unsupported dtype tag for '" + name + "'");
    uint8_t rank = r.u8();
    Tensor t;
    size_t n = 1;
    for (uint8_t d = 0; d < rank; ++d) {
      t.dims.push_back(static_cast<long>(r.u64()));
      n *= static_cast<size_t>(t.dims.back());
    }
    t.values.resize(n);
    for (size_t v = 0; v < n; ++v) t.values[v] = r.f32();
    if (!params.emplace(std::move(name), std::move(t)).second) {
      throw FormatError("duplicate parameter name in container");
    }
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after KYPM1 entries");
  return params;
}

void save_params(const std::string& path, const ParamMap& params) {
  write_file_bytes(path, serialize(params));
}

ParamMap load_params(const std::string& path) {
  return deserialize_params(read_file_bytes(path));
}

}  // namespace kyc
