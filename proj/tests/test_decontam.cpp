#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "kyc/decontam.hpp"
#include "test_support.hpp"

using namespace kyc;
using namespace kyc::test;

namespace {

SampleManifestEntry train_entry(const std::string& id, std::vector<std::string> images,
                                const std::string& source = "train") {
  SampleManifestEntry e;
  e.sample_id = id;
  e.image_ids = std::move(images);
  e.split = Split::train;
  e.source = source;
  return e;
}

std::vector<float> unit2(double x, double y) {
  double n = std::sqrt(x * x + y * y);
  return {static_cast<float>(x / n), static_cast<float>(y / n)};
}

EmbeddingRecord embed(const std::string& id, std::vector<float> image, std::vector<float> text) {
  return {id, std::move(image), std::move(text)};
}

}  // namespace

TEST_CASE("manifest invariants") {
  SampleManifestEntry bad = train_entry("s", {});
  CHECK_THROWS_AS(validate(bad), DataError);

  SampleManifestEntry mislabeled = train_entry("s", {"i"});
  mislabeled.benchmark_name = "MMBench";
  CHECK_THROWS_AS(validate(mislabeled), DataError);

  SampleManifestEntry bench;
  bench.sample_id = "b";
  bench.image_ids = {"i"};
  bench.split = Split::benchmark;
  CHECK_THROWS_AS(validate(bench), DataError);  // missing benchmark_name
  bench.benchmark_name = "MMBench";
  CHECK_NOTHROW(validate(bench));
}

TEST_CASE("hash scan with no collisions produces an empty report") {
  SplitMix64 g(21);
  LshIndex bench = LshIndex::build({{"b0", OnesSet{0xF0F0F0F0ULL}}}, 3);
  std::unordered_map<std::string, OnesSet> hashes{{"i0", OnesSet{0x0F0F0F0F00000000ULL}}};
  auto result = scan_hash_leakage({train_entry("s0", {"i0"})}, hashes, bench,
                                  {{"b0", "MMBench"}}, 3);
  CHECK(result.flagged_samples.empty());
  CHECK(result.report.rows.empty());
  CHECK(result.report.totals.empty());
}

TEST_CASE("one flagged image flags the whole multi-image sample") {
  SplitMix64 g(22);
  OnesSet leaked = random_ones_set(g, 30);
  LshIndex bench = LshIndex::build({{"bench_img", leaked}}, 5);
  std::unordered_map<std::string, OnesSet> hashes{
      {"clean1", random_ones_set(g, 30)},
      {"dup", leaked},
      {"clean2", random_ones_set(g, 30)},
  };
  auto result = scan_hash_leakage({train_entry("s0", {"clean1", "dup", "clean2"}, "srcA")},
                                  hashes, bench, {{"bench_img", "MMBench"}}, 5);
  CHECK(result.flagged_samples == std::set<std::string>{"s0"});
  REQUIRE(result.report.rows.size() == 1);
  CHECK(result.report.rows[0].train_source == "srcA");
  CHECK(result.report.rows[0].benchmark == "MMBench");
  CHECK(result.report.rows[0].duplicate_sample_count == 1);
}

TEST_CASE("missing hash is a data-integrity error naming the id") {
  LshIndex bench = LshIndex::build({}, 1);
  std::unordered_map<std::string, OnesSet> hashes;
  try {
    scan_hash_leakage({train_entry("s0", {"ghost"})}, hashes, bench, {}, 1);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("planted duplicates aggregate per benchmark") {
  // 7 planted duplicates across 2 benchmarks -> counts {b1: 4, b2: 3},
  // verified against a brute-force Jaccard oracle over the corpus.
  SplitMix64 g(23);
  std::vector<std::pair<std::string, OnesSet>> bench_records;
  std::unordered_map<std::string, std::string> bench_names;
  std::unordered_map<std::string, OnesSet> hashes;
  std::vector<SampleManifestEntry> train;

  for (int i = 0; i < 4; ++i) {
    OnesSet s = random_ones_set(g, 32);
    bench_records.emplace_back("b1img" + std::to_string(i), s);
    bench_names["b1img" + std::to_string(i)] = "bench1";
    hashes["t_b1_" + std::to_string(i)] = s;
    train.push_back(train_entry("leak_b1_" + std::to_string(i), {"t_b1_" + std::to_string(i)}));
  }
  for (int i = 0; i < 3; ++i) {
    OnesSet s = random_ones_set(g, 32);
    bench_records.emplace_back("b2img" + std::to_string(i), s);
    bench_names["b2img" + std::to_string(i)] = "bench2";
    hashes["t_b2_" + std::to_string(i)] = s;
    train.push_back(train_entry("leak_b2_" + std::to_string(i), {"t_b2_" + std::to_string(i)}));
  }
  for (int i = 0; i < 40; ++i) {
    hashes["t_clean_" + std::to_string(i)] = random_ones_set(g, 20);
    train.push_back(train_entry("clean_" + std::to_string(i), {"t_clean_" + std::to_string(i)}));
  }

  LshIndex bench = LshIndex::build(bench_records, 99);
  auto result = scan_hash_leakage(train, hashes, bench, bench_names, 99);

  // Brute-force oracle over the whole synthetic corpus.
  std::set<std::string> oracle_flagged;
  for (const SampleManifestEntry& sample : train) {
    for (const std::string& img : sample.image_ids) {
      for (const auto& [bid, bset] : bench_records) {
        if (oracle_jaccard(hashes.at(img).positions(), bset.positions()) >
            kDuplicateJaccardThreshold) {
          oracle_flagged.insert(sample.sample_id);
        }
      }
    }
  }
  CHECK(result.flagged_samples == oracle_flagged);
  CHECK(result.report.totals.at("bench1") == 4);
  CHECK(result.report.totals.at("bench2") == 3);
}

TEST_CASE("sample colliding with two benchmarks counts in both rows once each") {
  SplitMix64 g(24);
  OnesSet shared = random_ones_set(g, 28);
  LshIndex bench = LshIndex::build({{"x1", shared}, {"x2", shared}}, 7);
  std::unordered_map<std::string, OnesSet> hashes{{"img", shared}};
  auto result = scan_hash_leakage({train_entry("s0", {"img"}, "src")}, hashes, bench,
                                  {{"x1", "benchA"}, {"x2", "benchB"}}, 7);
  CHECK(result.flagged_samples.size() == 1);
  REQUIRE(result.report.rows.size() == 2);
  CHECK(result.report.totals.at("benchA") == 1);
  CHECK(result.report.totals.at("benchB") == 1);

  // Conservation: row sums equal totals.
  std::map<std::string, uint64_t> sums;
  for (const auto& row : result.report.rows) sums[row.benchmark] += row.duplicate_sample_count;
  CHECK(sums == result.report.totals);
}

TEST_CASE("embedding scan boundary semantics") {
  std::vector<EmbeddingRecord> bench = {embed("b", {1.0f, 0.0f}, {1.0f, 0.0f})};

  // Identical record: cosines exactly 1 -> flagged.
  auto flagged = scan_embedding_leakage({embed("t", {1.0f, 0.0f}, {1.0f, 0.0f})}, bench);
  CHECK(flagged == std::set<std::string>{"t"});

  // image 0.99, text 0.40: AND semantics -> not flagged.
  flagged = scan_embedding_leakage({embed("t", unit2(0.99, std::sqrt(1 - 0.99 * 0.99)),
                                          unit2(0.40, std::sqrt(1 - 0.16)))},
                                   bench);
  CHECK(flagged.empty());

  // ... but OR mode flags it.
  EmbeddingScanOptions any_of;
  any_of.require_both = false;
  flagged = scan_embedding_leakage({embed("t", unit2(0.99, std::sqrt(1 - 0.99 * 0.99)),
                                          unit2(0.40, std::sqrt(1 - 0.16)))},
                                   bench, any_of);
  CHECK(flagged == std::set<std::string>{"t"});

  // Orthogonal image vectors -> never flagged under AND, whatever the text.
  flagged = scan_embedding_leakage({embed("t", {0.0f, 1.0f}, {1.0f, 0.0f})}, bench);
  CHECK(flagged.empty());
}

TEST_CASE("embedding cosine exactly at a threshold does not flag") {
  // Against bench image {1,0} the cosine is exactly (double)img[0], so a
  // threshold set to that value pins the equality case: strict > must not
  // flag it, and any threshold below it must.
  std::vector<EmbeddingRecord> bench = {embed("b", {1.0f, 0.0f}, {1.0f, 0.0f})};
  std::vector<float> img = {0.98f, static_cast<float>(std::sqrt(1.0 - 0.98 * 0.98))};
  double attained = static_cast<double>(img[0]);

  EmbeddingScanOptions opts;
  opts.image_threshold = attained;
  opts.text_threshold = 0.5;
  CHECK(scan_embedding_leakage({embed("t", img, {1.0f, 0.0f})}, bench, opts).empty());

  opts.image_threshold = std::nextafter(attained, 0.0);
  CHECK(scan_embedding_leakage({embed("t", img, {1.0f, 0.0f})}, bench, opts) ==
        std::set<std::string>{"t"});
}

TEST_CASE("embedding scan validates norms and dimensions") {
  std::vector<EmbeddingRecord> bench = {embed("b", {1.0f, 0.0f}, {1.0f, 0.0f})};
  CHECK_THROWS_AS(scan_embedding_leakage({embed("t", {0.9f, 0.0f}, {1.0f, 0.0f})}, bench),
                  DataError);
  CHECK_THROWS_AS(scan_embedding_leakage({embed("t", {1.0f, 0.0f, 0.0f}, {1.0f, 0.0f})}, bench),
                  DataError);
}

TEST_CASE("pair filter keeps strictly-above-threshold scores in order") {
  auto result = filter_pair_score({{"a", 0.95}, {"b", 0.9}, {"c", 0.91}, {"d", 0.2}});
  CHECK(result.kept == std::vector<std::string>{"a", "c"});
  CHECK(result.dropped == std::vector<std::string>{"b", "d"});  // 0.9 is not > 0.9

  auto empty = filter_pair_score({});
  CHECK(empty.kept.empty());
  CHECK(empty.dropped.empty());

  CHECK_THROWS_AS(filter_pair_score({{"n", std::nan("")}}), DataError);
}

TEST_CASE("report rendering") {
  LeakageReport empty;
  CHECK(emit_report(empty, ReportFormat::csv) == "train_source,benchmark,duplicates\n");

  LeakageReport one;
  one.rows.push_back({"srcA", "MMBench", 12});
  one.totals["MMBench"] = 12;
  std::string csv = emit_report(one, ReportFormat::csv);
  CHECK(csv.find("srcA,MMBench,12\n") != std::string::npos);

  LeakageReport two;
  two.rows.push_back({"srcB", "MMBench", 5});
  two.rows.push_back({"srcA", "MMBench", 12});
  two.totals["MMBench"] = 17;
  csv = emit_report(two, ReportFormat::csv);
  // Rows sorted by source; totals line sums them.
  CHECK(csv.find("srcA,MMBench,12") < csv.find("srcB,MMBench,5"));
  CHECK(csv.find("TOTAL,MMBench,17\n") != std::string::npos);

  std::string json = emit_report(two, ReportFormat::json);
  CHECK(json.find("\"MMBench\": 17") != std::string::npos);
}

TEST_CASE("manifest and embedding files round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kyc_test_io";
  fs::create_directories(dir);

  std::vector<SampleManifestEntry> entries;
  entries.push_back(train_entry("s0", {"i0", "i1"}, "srcA"));
  SampleManifestEntry bench;
  bench.sample_id = "b0";
  bench.image_ids = {"x0"};
  bench.split = Split::benchmark;
  bench.benchmark_name = "MMBench";
  entries.push_back(bench);

  std::string manifest = (dir / "manifest.jsonl").string();
  write_manifest_jsonl(manifest, entries);
  auto loaded = read_manifest_jsonl(manifest);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].sample_id == "s0");
  CHECK(loaded[0].source == "srcA");
  CHECK(loaded[1].benchmark_name == "MMBench");

  std::vector<EmbeddingRecord> embeds = {
      embed("e0", unit2(0.6, 0.8), unit2(1.0, 0.0)),
      embed("e1", unit2(0.0, 1.0), unit2(0.8, 0.6)),
  };
  std::string jsonl = (dir / "embed.jsonl").string();
  std::string packed = (dir / "embed.kyem").string();
  write_embeddings_jsonl(jsonl, embeds);
  write_embeddings_packed(packed, embeds);
  auto from_jsonl = read_embeddings(jsonl);
  auto from_packed = read_embeddings(packed);
  REQUIRE(from_jsonl.size() == 2);
  REQUIRE(from_packed.size() == 2);
  CHECK(from_packed[0].image_vec == embeds[0].image_vec);  // f32 exact
  CHECK(from_jsonl[1].text_vec == embeds[1].text_vec);

  fs::remove_all(dir);
}
