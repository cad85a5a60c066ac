#include <sstream>

#include <nlohmann/json.hpp>

#include "kyc/decontam.hpp"

namespace kyc {

namespace {

// Rows must leave in (train_source, benchmark) order regardless of how the
// report was assembled.
std::vector<LeakageReport::Row> sorted_rows(const LeakageReport& report) {
  std::vector<LeakageReport::Row> rows = report.rows;
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.train_source != b.train_source) return a.train_source < b.train_source;
    return a.benchmark < b.benchmark;
  });
  return rows;
}

}  // namespace

std::string emit_report(const LeakageReport& report, ReportFormat format) {
  std::vector<LeakageReport::Row> rows = sorted_rows(report);

  if (format == ReportFormat::csv) {
    std::ostringstream out;
    out << "train_source,benchmark,duplicates\n";
    for (const auto& row : rows) {
      out << row.train_source << ',' << row.benchmark << ',' << row.duplicate_sample_count << '\n';
    }
    for (const auto& [benchmark, total] : report.totals) {
      out << "TOTAL," << benchmark << ',' << total << '\n';
    }
    return out.str();
  }

  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    j["rows"].push_back({{"train_source", row.train_source},
                         {"benchmark", row.benchmark},
                         {"duplicates", row.duplicate_sample_count}});
  }
  j["totals"] = nlohmann::ordered_json::object();
  for (const auto& [benchmark, total] : report.totals) {
    j["totals"][benchmark] = total;
  }
  return j.dump(2) + "\n";
}

}  // namespace kyc
