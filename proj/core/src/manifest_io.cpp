#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kyc/binio.hpp"
#include "kyc/decontam.hpp"
#include "kyc/errors.hpp"

namespace kyc {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, const std::string& path, size_t lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw DataError(path + ":" + std::to_string(lineno) + ": malformed JSON object");
  }
  return j;
}

[[noreturn]] void line_error(const std::string& path, size_t lineno, const std::string& what) {
  throw DataError(path + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

std::vector<SampleManifestEntry> read_manifest_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);

  std::vector<SampleManifestEntry> entries;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    SampleManifestEntry entry;
    try {
      entry.sample_id = j.at("sample_id").get<std::string>();
      entry.image_ids = j.at("image_ids").get<std::vector<std::string>>();
      std::string split = j.at("split").get<std::string>();
      if (split == "train") {
        entry.split = Split::train;
      } else if (split == "benchmark") {
        entry.split = Split::benchmark;
      } else {
        line_error(path, lineno, "unknown split '" + split + "'");
      }
      if (j.contains("benchmark_name")) {
        entry.benchmark_name = j.at("benchmark_name").get<std::string>();
      }
      if (j.contains("source")) entry.source = j.at("source").get<std::string>();
    } catch (const json::exception& e) {
      line_error(path, lineno, e.what());
    }
    try {
      validate(entry);
    } catch (const DataError& e) {
      line_error(path, lineno, e.what());
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

void write_manifest_jsonl(const std::string& path,
                          const std::vector<SampleManifestEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open manifest for write: " + path);
  for (const SampleManifestEntry& entry : entries) {
    validate(entry);
    nlohmann::ordered_json j;
    j["sample_id"] = entry.sample_id;
    j["image_ids"] = entry.image_ids;
    j["split"] = entry.split == Split::train ? "train" : "benchmark";
    if (entry.benchmark_name) j["benchmark_name"] = *entry.benchmark_name;
    j["source"] = entry.source;
    out << j.dump() << '\n';
  }
}

namespace {
constexpr char kEmbedMagic[] = "KYEM1";
constexpr size_t kEmbedMagicLen = 5;
}  // namespace

std::vector<EmbeddingRecord> read_embeddings(const std::string& path) {
  std::vector<uint8_t> bytes = read_file_bytes(path);
  std::vector<EmbeddingRecord> records;

  if (bytes.size() >= kEmbedMagicLen &&
      std::equal(kEmbedMagic, kEmbedMagic + kEmbedMagicLen, bytes.begin())) {
    ByteReader r(bytes);
    r.str(kEmbedMagicLen);
    uint32_t dim = r.u32();
    uint64_t count = r.u64();
    for (uint64_t i = 0; i < count; ++i) {
      EmbeddingRecord rec;
      rec.id = r.str(r.u16());
      rec.image_vec.resize(dim);
      for (uint32_t d = 0; d < dim; ++d) rec.image_vec[d] = r.f32();
      rec.text_vec.resize(dim);
      for (uint32_t d = 0; d < dim; ++d) rec.text_vec[d] = r.f32();
      records.push_back(std::move(rec));
    }
    if (r.remaining() != 0) throw FormatError("trailing bytes after KYEM1 records");
    return records;
  }

  // JSONL fallback.
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, path, lineno);
    EmbeddingRecord rec;
    try {
      rec.id = j.at("id").get<std::string>();
      rec.image_vec = j.at("image_vec").get<std::vector<float>>();
      rec.text_vec = j.at("text_vec").get<std::vector<float>>();
    } catch (const json::exception& e) {
      line_error(path, lineno, e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

void write_embeddings_jsonl(const std::string& path,
                            const std::vector<EmbeddingRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open embeddings for write: " + path);
  for (const EmbeddingRecord& rec : records) {
    nlohmann::ordered_json j;
    j["id"] = rec.id;
    j["image_vec"] = rec.image_vec;
    j["text_vec"] = rec.text_vec;
    out << j.dump() << '\n';
  }
}

void write_embeddings_packed(const std::string& path,
                             const std::vector<EmbeddingRecord>& records) {
  uint32_t dim = records.empty() ? 0 : static_cast<uint32_t>(records.front().image_vec.size());
  ByteWriter w;
  w.bytes(kEmbedMagic, kEmbedMagicLen);
  w.u32(dim);
  w.u64(records.size());
  for (const EmbeddingRecord& rec : records) {
    if (rec.image_vec.size() != dim || rec.text_vec.size() != dim) {
      throw DataError("embedding '" + rec.id + "' does not match corpus dimension " +
                      std::to_string(dim));
    }
    w.u16(static_cast<uint16_t>(rec.id.size()));
    w.str(rec.id);
    for (float v : rec.image_vec) w.f32(v);
    for (float v : rec.text_vec) w.f32(v);
  }
  write_file_bytes(path, w.take());
}

}  // namespace kyc
