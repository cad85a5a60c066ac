#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kyc {

// Data-loader position at sample granularity. shard_index and sample_offset
// address the seeded iteration order of the epoch, not raw file order, so a
// loaded cursor replays exactly the sequence an uninterrupted run would have
// produced.
struct ResumeCursor {
  uint64_t epoch = 0;
  uint64_t shard_index = 0;    // position in the epoch's shard order
  uint64_t sample_offset = 0;  // position within the shard's sample order
  uint64_t shuffle_seed = 0;

  friend bool operator==(const ResumeCursor&, const ResumeCursor&) = default;
};

// KYCR1 container: magic, four u64 little-endian fields, trailing CRC-32
// over everything before it. load rejects bad magic, truncation, and CRC
// mismatch (FormatError).
std::vector<uint8_t> save_cursor(const ResumeCursor& cursor);
ResumeCursor load_cursor(const std::vector<uint8_t>& bytes);

// Atomic save: write to <path>.tmp, then rename over path.
void save_cursor_file(const std::string& path, const ResumeCursor& cursor);
ResumeCursor load_cursor_file(const std::string& path);

// Deterministic sample iterator over a fixed shard layout. Each epoch visits
// shards in a seeded order and each shard's samples in a seeded order; both
// permutations derive from (seed, epoch[, shard]) alone, which is what makes
// cursor-based resume exact.
class SampleStream {
 public:
  SampleStream(std::vector<std::vector<std::string>> shards, uint64_t seed);
  // Throws ConfigError if the cursor's seed disagrees with `seed`, or
  // DataError if the cursor is out of the shard layout's bounds.
  SampleStream(std::vector<std::vector<std::string>> shards, const ResumeCursor& cursor);

  // Id of the next sample; advances. Empty shards are skipped.
  const std::string& next();

  ResumeCursor cursor() const;
  uint64_t epoch() const { return epoch_; }

 private:
  void enter_epoch(uint64_t epoch);
  void load_shard_order();
  void load_sample_order();
  void skip_exhausted();

  std::vector<std::vector<std::string>> shards_;
  uint64_t seed_ = 0;
  uint64_t epoch_ = 0;
  uint64_t shard_pos_ = 0;   // index into shard_order_
  uint64_t sample_pos_ = 0;  // index into sample_order_
  std::vector<uint32_t> shard_order_;
  std::vector<uint32_t> sample_order_;
};

}  // namespace kyc
