#include <limits>

#include "kyc/binio.hpp"
#include "kyc/errors.hpp"
#include "kyc/lsh.hpp"

namespace kyc {

namespace {
constexpr char kMagic[] = "KYDX1";
constexpr size_t kMagicLen = 5;
}  // namespace

std::vector<uint8_t> LshIndex::serialize() const {
  ByteWriter w;
  w.bytes(kMagic, kMagicLen);
  w.u64(config_.seed);
  w.u16(static_cast<uint16_t>(config_.bands));
  w.u16(static_cast<uint16_t>(config_.rows_per_band));
  w.u64(ids_.size());
  for (size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i].size() > std::numeric_limits<uint16_t>::max()) {
      throw DataError("record id longer than 65535 bytes: " + ids_[i].substr(0, 64));
    }
    w.u16(static_cast<uint16_t>(ids_[i].size()));
    w.str(ids_[i]);
    w.u64(sets_[i].bits);
    for (uint32_t m : signatures_[i].minima) w.u32(m);
  }
  return w.take();
}

LshIndex LshIndex::deserialize(const std::vector<uint8_t>& bytes) {
  ByteReader r(bytes);
  if (r.remaining() < kMagicLen || r.str(kMagicLen) != kMagic) {
    throw FormatError("not a KYDX1 signature index");
  }
  LshConfig config;
  config.seed = r.u64();
  config.bands = r.u16();
  config.rows_per_band = r.u16();
  uint64_t count = r.u64();

  LshIndex index(config);
  for (uint64_t i = 0; i < count; ++i) {
    uint16_t id_len = r.u16();
    std::string id = r.str(id_len);
    OnesSet set = OnesSet::from_bits(r.u64());
    MinHashSignature stored;
    stored.empty_flag = set.empty();
    for (int k = 0; k < kSignatureLength; ++k) stored.minima[k] = r.u32();

    index.insert(id, set);
    if (!(index.signatures_.back() == stored)) {
      throw FormatError("stored signature for '" + id + "' disagrees with its set under seed " +
                        std::to_string(config.seed));
    }
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after KYDX1 records");
  return index;
}

void LshIndex::save(const std::string& path) const { write_file_bytes(path, serialize()); }

LshIndex LshIndex::load(const std::string& path) {
  return deserialize(read_file_bytes(path));
}

}  // namespace kyc
