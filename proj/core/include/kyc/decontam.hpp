#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "kyc/lsh.hpp"

namespace kyc {

enum class Split { train, benchmark };

struct SampleManifestEntry {
  std::string sample_id;
  std::vector<std::string> image_ids;  // >= 1
  Split split = Split::train;
  std::optional<std::string> benchmark_name;  // present iff split == benchmark
  // Dataset of origin for train samples; keys the report rows. Defaults to
  // "train" when the manifest does not carry one.
  std::string source = "train";
};

// Throws DataError on violated invariants (no images, benchmark_name on the
// wrong split).
void validate(const SampleManifestEntry& entry);

struct EmbeddingRecord {
  std::string id;
  std::vector<float> image_vec;  // unit L2 norm within 1e-3
  std::vector<float> text_vec;   // unit L2 norm within 1e-3
};

struct LeakageReport {
  struct Row {
    std::string train_source;
    std::string benchmark;
    uint64_t duplicate_sample_count = 0;
  };
  std::vector<Row> rows;                  // sorted by (train_source, benchmark)
  std::map<std::string, uint64_t> totals;  // benchmark -> column sum
};

struct HashLeakageResult {
  std::set<std::string> flagged_samples;
  LeakageReport report;
};

// Hash-based benchmark leakage scan. An image is flagged iff some benchmark
// image verifies at Jaccard > 0.95; a sample is flagged iff any of its images
// is flagged. A sample colliding with several benchmarks counts toward each
// benchmark's row but appears once in the flagged set.
//
// bench_image_benchmark maps every id stored in bench_index to its benchmark
// name (ids without a mapping are attributed to "unknown").
HashLeakageResult scan_hash_leakage(
    const std::vector<SampleManifestEntry>& train,
    const std::unordered_map<std::string, OnesSet>& train_hashes,
    const LshIndex& bench_index,
    const std::unordered_map<std::string, std::string>& bench_image_benchmark,
    uint64_t seed);

struct EmbeddingScanOptions {
  double image_threshold = 0.98;
  double text_threshold = 0.50;
  // AND semantics by default: flag when both cosines exceed their thresholds
  // (strictly). OR mode flags when either does.
  bool require_both = true;
};

// Dual-threshold embedding scan; cosines are plain dot products of the unit
// vectors. Throws DataError on non-unit vectors (beyond 1e-3) or mixed
// dimensions.
std::set<std::string> scan_embedding_leakage(const std::vector<EmbeddingRecord>& train,
                                             const std::vector<EmbeddingRecord>& bench,
                                             const EmbeddingScanOptions& options = {});

struct PairFilterResult {
  std::vector<std::string> kept;
  std::vector<std::string> dropped;
};

// Keep iff score > threshold (strict); input order preserved. NaN -> DataError.
PairFilterResult filter_pair_score(const std::vector<std::pair<std::string, double>>& records,
                                   double threshold = 0.9);

enum class ReportFormat { json, csv };

// Deterministic rendering. CSV: header "train_source,benchmark,duplicates",
// one line per row, then one "TOTAL,<benchmark>,<sum>" line per benchmark.
std::string emit_report(const LeakageReport& report, ReportFormat format);

// --- manifest / embedding interchange ---

// JSONL manifests, one SampleManifestEntry per line:
//   {"sample_id":..,"image_ids":[..],"split":"train"|"benchmark",
//    "benchmark_name":..?,"source":..?}
std::vector<SampleManifestEntry> read_manifest_jsonl(const std::string& path);
void write_manifest_jsonl(const std::string& path,
                          const std::vector<SampleManifestEntry>& entries);

// Embeddings as JSONL {"id":..,"image_vec":[..],"text_vec":[..]} or the
// packed KYEM1 container (magic, dim u32, count u64, then per record id
// length u16 + id, dim f32 image, dim f32 text; all little-endian). The
// reader sniffs the magic.
std::vector<EmbeddingRecord> read_embeddings(const std::string& path);
void write_embeddings_jsonl(const std::string& path, const std::vector<EmbeddingRecord>& records);
void write_embeddings_packed(const std::string& path, const std::vector<EmbeddingRecord>& records);

}  // namespace kyc
