#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fracheat {

using Json = nlohmann::ordered_json;

/// One plot-data file: whitespace-separated columns, one row per line.
struct PlotSeries {
  std::string name;
  std::string header;  // written as a leading '#' comment
  std::vector<std::vector<double>> rows;
};

struct ExperimentRecord {
  std::string experiment;
  std::string timestamp;
  std::string version;
  Json params = Json::object();
  Json measured = Json::object();
  std::vector<std::pair<std::string, bool>> verdicts;

  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<PlotSeries> plots;

  bool passed() const noexcept;
  void verdict(const std::string& name, bool ok) { verdicts.emplace_back(name, ok); }
  Json to_json() const;
};

/// Shortest round-trip text for a double (inf and nan spelled out).
std::string format_number(double v);

/// UTC timestamp like 20260101T120000Z.
std::string utc_timestamp();

/// Output root: $FRACHEAT_RESULTS if set, else `fallback`.
std::filesystem::path output_root(const std::filesystem::path& fallback = ".");

struct EmittedFiles {
  std::vector<std::filesystem::path> csv;
  std::filesystem::path registry;
  std::vector<std::filesystem::path> plots;
};

/// Writes results/<name>-<timestamp>.csv (all records of one name and
/// timestamp share a file), appends one registry.jsonl line per record and
/// writes plots/<name>-<series>.dat. CSVs are written to a temporary file and
/// renamed, so an I/O failure leaves no partial CSV behind.
EmittedFiles emit_report(const std::vector<ExperimentRecord>& records, const std::filesystem::path& root);

/// CSV body (header + rows) of the given records.
std::string render_csv(const std::vector<ExperimentRecord>& records);

}  // namespace fracheat
