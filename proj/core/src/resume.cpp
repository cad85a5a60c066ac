#include "kyc/resume.hpp"

#include <filesystem>

#include "kyc/binio.hpp"
#include "kyc/errors.hpp"
#include "kyc/rng.hpp"

namespace kyc {

namespace {
constexpr char kMagic[] = "KYCR1";
constexpr size_t kMagicLen = 5;
constexpr size_t kCursorBytes = kMagicLen + 4 * 8 + 4;
}  // namespace

std::vector<uint8_t> save_cursor(const ResumeCursor& cursor) {
  ByteWriter w;
  w.bytes(kMagic, kMagicLen);
  w.u64(cursor.epoch);
  w.u64(cursor.shard_index);
  w.u64(cursor.sample_offset);
  w.u64(cursor.shuffle_seed);
  w.u32(crc32(w.data().data(), w.size()));
  return w.take();
}

ResumeCursor load_cursor(const std::vector<uint8_t>& bytes) {
  if (bytes.size() != kCursorBytes) {
    throw FormatError("cursor must be exactly " + std::to_string(kCursorBytes) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  ByteReader r(bytes);
  if (r.str(kMagicLen) != kMagic) throw FormatError("not a KYCR1 cursor");
  ResumeCursor cursor;
  cursor.epoch = r.u64();
  cursor.shard_index = r.u64();
  cursor.sample_offset = r.u64();
  cursor.shuffle_seed = r.u64();
  uint32_t stored = r.u32();
  uint32_t computed = crc32(bytes.data(), kCursorBytes - 4);
  if (stored != computed) throw FormatError("cursor checksum mismatch (corrupted file)");
  return cursor;
}

void save_cursor_file(const std::string& path, const ResumeCursor& cursor) {
  std::string tmp = path + ".tmp";
  write_file_bytes(tmp, save_cursor(cursor));
  std::filesystem::rename(tmp, path);
}

ResumeCursor load_cursor_file(const std::string& path) {
  return load_cursor(read_file_bytes(path));
}

namespace {

void require_samples(const std::vector<std::vector<std::string>>& shards) {
  for (const auto& shard : shards) {
    if (!shard.empty()) return;
  }
  throw DataError("sample stream needs at least one non-empty shard");
}

}  // namespace

SampleStream::SampleStream(std::vector<std::vector<std::string>> shards, uint64_t seed)
    : shards_(std::move(shards)), seed_(seed) {
  require_samples(shards_);
  load_shard_order();
  load_sample_order();
  skip_exhausted();
}

SampleStream::SampleStream(std::vector<std::vector<std::string>> shards,
                           const ResumeCursor& cursor)
    : shards_(std::move(shards)), seed_(cursor.shuffle_seed) {
  require_samples(shards_);
  if (cursor.shard_index > shards_.size()) {
    throw DataError("cursor shard index out of bounds");
  }
  epoch_ = cursor.epoch;
  load_shard_order();
  shard_pos_ = cursor.shard_index;
  sample_pos_ = cursor.sample_offset;
  if (shard_pos_ < shards_.size()) {
    load_sample_order();
    if (sample_pos_ > sample_order_.size()) {
      throw DataError("cursor sample offset out of shard bounds");
    }
  } else if (sample_pos_ != 0) {
    throw DataError("cursor sample offset out of shard bounds");
  }
  skip_exhausted();
}

void SampleStream::enter_epoch(uint64_t epoch) {
  epoch_ = epoch;
  shard_pos_ = 0;
  sample_pos_ = 0;
  load_shard_order();
  load_sample_order();
}

void SampleStream::load_shard_order() {
  shard_order_ = seeded_permutation(mix64(seed_, mix64(0x5348u /*"SH"*/, epoch_)),
                                    static_cast<uint32_t>(shards_.size()));
}

void SampleStream::load_sample_order() {
  if (shard_pos_ >= shards_.size()) {
    sample_order_.clear();
    return;
  }
  uint32_t shard = shard_order_[shard_pos_];
  sample_order_ =
      seeded_permutation(mix64(mix64(seed_, epoch_), 0x53414D50u /*"SAMP"*/ + shard),
                         static_cast<uint32_t>(shards_[shard].size()));
}

// Advance past empty/finished shards and, at the end of an epoch, into the
// next one. Terminates because the layout has at least one sample.
void SampleStream::skip_exhausted() {
  while (true) {
    while (shard_pos_ < shards_.size() && sample_pos_ >= sample_order_.size()) {
      ++shard_pos_;
      sample_pos_ = 0;
      load_sample_order();
    }
    if (shard_pos_ < shards_.size()) return;
    enter_epoch(epoch_ + 1);
  }
}

const std::string& SampleStream::next() {
  uint32_t shard = shard_order_[shard_pos_];
  const std::string& id = shards_[shard][sample_order_[sample_pos_]];
  ++sample_pos_;
  skip_exhausted();
  return id;
}

ResumeCursor SampleStream::cursor() const {
  return ResumeCursor{epoch_, shard_pos_, sample_pos_, seed_};
}

}  // namespace kyc
