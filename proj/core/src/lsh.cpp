#include "kyc/lsh.hpp"

#include <algorithm>

#include "kyc/binio.hpp"
#include "kyc/errors.hpp"

namespace kyc {

LshIndex::LshIndex(LshConfig config) : config_(config), perms_(config.seed) {
  if (config_.bands < 1 || config_.rows_per_band < 1 ||
      config_.bands * config_.rows_per_band != kSignatureLength) {
    throw ConfigError("bands * rows_per_band must equal " + std::to_string(kSignatureLength));
  }
  buckets_.resize(static_cast<size_t>(config_.bands));
}

uint64_t LshIndex::band_key(const MinHashSignature& sig, int band) const {
  const uint32_t* slice = sig.minima.data() + static_cast<size_t>(band) * config_.rows_per_band;
  ByteWriter w;
  for (int r = 0; r < config_.rows_per_band; ++r) w.u32(slice[r]);
  return fnv1a64(w.data().data(), w.size());
}

void LshIndex::insert(const std::string& id, OnesSet set) {
  if (slot_of_.contains(id)) throw DataError("duplicate record id: " + id);
  uint32_t slot = static_cast<uint32_t>(ids_.size());
  slot_of_.emplace(id, slot);
  ids_.push_back(id);
  sets_.push_back(set);
  signatures_.push_back(minhash_signature(set, perms_));
  for (int b = 0; b < config_.bands; ++b) {
    buckets_[b][band_key(signatures_.back(), b)].push_back(slot);
  }
}

LshIndex LshIndex::build(const std::vector<std::pair<std::string, OnesSet>>& records,
                         uint64_t seed, int bands, int rows_per_band) {
  LshIndex index(LshConfig{seed, bands, rows_per_band});
  for (const auto& [id, set] : records) index.insert(id, set);
  return index;
}

std::vector<DuplicateVerdict> LshIndex::query(OnesSet probe, uint64_t seed,
                                              const std::string& probe_id) const {
  if (seed != config_.seed) {
    throw ConfigError("query seed does not match index seed");
  }
  MinHashSignature sig = minhash_signature(probe, perms_);

  std::vector<uint32_t> candidates;
  for (int b = 0; b < config_.bands; ++b) {
    auto it = buckets_[b].find(band_key(sig, b));
    if (it == buckets_[b].end()) continue;
    candidates.insert(candidates.end(), it->second.begin(), it->second.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<DuplicateVerdict> verdicts;
  verdicts.reserve(candidates.size());
  for (uint32_t slot : candidates) {
    double j = jaccard(probe, sets_[slot]);
    verdicts.push_back({probe_id, ids_[slot], j, j > kDuplicateJaccardThreshold});
  }
  std::sort(verdicts.begin(), verdicts.end(), [](const auto& a, const auto& b) {
    if (a.jaccard != b.jaccard) return a.jaccard > b.jaccard;
    return a.id_b < b.id_b;
  });
  return verdicts;
}

}  // namespace kyc
