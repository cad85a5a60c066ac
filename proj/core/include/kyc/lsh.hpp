#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "kyc/minhash.hpp"

namespace kyc {

inline constexpr double kDuplicateJaccardThreshold = 0.95;

struct DuplicateVerdict {
  std::string id_a;  // probe
  std::string id_b;  // indexed record
  double jaccard = 0.0;
  bool is_duplicate = false;
};

struct LshConfig {
  uint64_t seed = 0;
  int bands = 32;
  int rows_per_band = 4;
};

// Banded MinHash index. Build is single-writer; once built the index is
// immutable and safe for any number of concurrent readers.
class LshIndex {
 public:
  // Throws ConfigError unless bands * rows_per_band == kSignatureLength.
  explicit LshIndex(LshConfig config);

  // Throws DataError on duplicate id.
  void insert(const std::string& id, OnesSet set);

  static LshIndex build(const std::vector<std::pair<std::string, OnesSet>>& records,
                        uint64_t seed, int bands = 32, int rows_per_band = 4);

  // Candidates = union of records sharing any band bucket with the probe,
  // each verified with exact Jaccard. Sorted by descending jaccard, ties by
  // ascending id. Throws ConfigError if the caller's seed does not match the
  // index seed.
  std::vector<DuplicateVerdict> query(OnesSet probe, uint64_t seed,
                                      const std::string& probe_id = "probe") const;

  const LshConfig& config() const { return config_; }
  size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  OnesSet set_of(size_t slot) const { return sets_[slot]; }
  const MinHashSignature& signature_of(size_t slot) const { return signatures_[slot]; }

  // KYDX1 container: magic, header (seed u64, bands u16, rows u16, count
  // u64), then per record (id length u16 + UTF-8 id, OnesSet as u64 bitmask,
  // 128 x u32 minima). Bit-exact round trip; buckets are rebuilt on load.
  std::vector<uint8_t> serialize() const;
  static LshIndex deserialize(const std::vector<uint8_t>& bytes);
  void save(const std::string& path) const;
  static LshIndex load(const std::string& path);

 private:
  uint64_t band_key(const MinHashSignature& sig, int band) const;

  LshConfig config_;
  PermutationSet perms_;
  std::vector<std::string> ids_;
  std::vector<OnesSet> sets_;
  std::vector<MinHashSignature> signatures_;
  std::unordered_map<std::string, uint32_t> slot_of_;
  // One bucket map per band; values are record slots.
  std::vector<std::unordered_map<uint64_t, std::vector<uint32_t>>> buckets_;
};

}  // namespace kyc
