#include "kyc/decontam.hpp"

#include <algorithm>
#include <cmath>

#include "kyc/errors.hpp"

namespace kyc {

void validate(const SampleManifestEntry& entry) {
  if (entry.sample_id.empty()) throw DataError("sample with empty id");
  if (entry.image_ids.empty()) {
    throw DataError("sample '" + entry.sample_id + "' has no images");
  }
  bool is_bench = entry.split == Split::benchmark;
  if (is_bench != entry.benchmark_name.has_value()) {
    throw DataError("sample '" + entry.sample_id +
                    "': benchmark_name must be present iff split is benchmark");
  }
}

HashLeakageResult scan_hash_leakage(
    const std::vector<SampleManifestEntry>& train,
    const std::unordered_map<std::string, OnesSet>& train_hashes,
    const LshIndex& bench_index,
    const std::unordered_map<std::string, std::string>& bench_image_benchmark,
    uint64_t seed) {
  HashLeakageResult result;
  // (source, benchmark) -> flagged sample count
  std::map<std::pair<std::string, std::string>, uint64_t> cells;

  for (const SampleManifestEntry& sample : train) {
    validate(sample);
    std::set<std::string> benchmarks_hit;
    for (const std::string& image_id : sample.image_ids) {
      auto it = train_hashes.find(image_id);
      if (it == train_hashes.end()) {
        throw DataError("no hash for image id '" + image_id + "' referenced by sample '" +
                        sample.sample_id + "'");
      }
      for (const DuplicateVerdict& v : bench_index.query(it->second, seed, image_id)) {
        if (!v.is_duplicate) continue;
        auto bench = bench_image_benchmark.find(v.id_b);
        benchmarks_hit.insert(bench != bench_image_benchmark.end() ? bench->second : "unknown");
      }
    }
    if (benchmarks_hit.empty()) continue;
    result.flagged_samples.insert(sample.sample_id);
    for (const std::string& bench : benchmarks_hit) {
      cells[{sample.source, bench}] += 1;
    }
  }

  for (const auto& [key, count] : cells) {
    result.report.rows.push_back({key.first, key.second, count});
    result.report.totals[key.second] += count;
  }
  // std::map iteration already yields (source, benchmark) order.
  return result;
}

namespace {

double unit_dot(const std::vector<float>& a, const std::vector<float>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * b[i];
  return acc;
}

void check_unit(const EmbeddingRecord& rec, const std::vector<float>& vec, const char* which,
                size_t dim) {
  if (vec.size() != dim) {
    throw DataError("embedding '" + rec.id + "': " + which + " dimension " +
                    std::to_string(vec.size()) + " != corpus dimension " + std::to_string(dim));
  }
  double norm = std::sqrt(unit_dot(vec, vec));
  if (std::abs(norm - 1.0) > 1e-3) {
    throw DataError("embedding '" + rec.id + "': " + which + " is not unit norm (" +
                    std::to_string(norm) + ")");
  }
}

}  // namespace

std::set<std::string> scan_embedding_leakage(const std::vector<EmbeddingRecord>& train,
                                             const std::vector<EmbeddingRecord>& bench,
                                             const EmbeddingScanOptions& options) {
  std::set<std::string> flagged;
  if (train.empty() || bench.empty()) return flagged;

  size_t dim = train.front().image_vec.size();
  size_t text_dim = train.front().text_vec.size();
  for (const auto* corpus : {&train, &bench}) {
    for (const EmbeddingRecord& rec : *corpus) {
      check_unit(rec, rec.image_vec, "image_vec", dim);
      check_unit(rec, rec.text_vec, "text_vec", text_dim);
    }
  }

  for (const EmbeddingRecord& t : train) {
    for (const EmbeddingRecord& b : bench) {
      bool image_hit = unit_dot(t.image_vec, b.image_vec) > options.image_threshold;
      bool text_hit = unit_dot(t.text_vec, b.text_vec) > options.text_threshold;
      bool hit = options.require_both ? (image_hit && text_hit) : (image_hit || text_hit);
      if (hit) {
        flagged.insert(t.id);
        break;
      }
    }
  }
  return flagged;
}

PairFilterResult filter_pair_score(const std::vector<std::pair<std::string, double>>& records,
                                   double threshold) {
  PairFilterResult result;
  for (const auto& [id, score] : records) {
    if (std::isnan(score)) throw DataError("NaN score for record '" + id + "'");
    (score > threshold ? result.kept : result.dropped).push_back(id);
  }
  return result;
}

}  // namespace kyc
