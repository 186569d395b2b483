#include "fracheat/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "fracheat/errors.hpp"

namespace fracheat {

namespace fs = std::filesystem;

bool ExperimentRecord::passed() const noexcept {
  for (const auto& [name, ok] : verdicts) {
    if (!ok) return false;
  }
  return true;
}

Json ExperimentRecord::to_json() const {
  Json j;
  j["experiment"] = experiment;
  j["timestamp"] = timestamp;
  j["version"] = version;
  j["params"] = params;
  j["measured"] = measured;
  Json v = Json::object();
  for (const auto& [name, ok] : verdicts) v[name] = ok;
  j["verdicts"] = v;
  j["pass"] = passed();
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

fs::path output_root(const fs::path& fallback) {
  if (const char* env = std::getenv("FRACHEAT_RESULTS"); env && *env) return fs::path(env);
  return fallback;
}

std::string render_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  if (records.empty()) return {};
  const auto& cols = records.front().columns;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : records) {
    if (r.columns != cols) throw IoError("records sharing a CSV must share columns");
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
  }
  return os.str();
}

namespace {

void write_atomically(const fs::path& path, const std::string& body) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write " + tmp.string());
    os << body;
    os.flush();
    if (!os) {
      os.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " into place");
  }
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

}  // namespace

EmittedFiles emit_report(const std::vector<ExperimentRecord>& records, const fs::path& root) {
  if (records.empty()) throw DomainError("emit_report needs at least one record");
  EmittedFiles out;
  ensure_dir(root / "results");
  ensure_dir(root / "plots");

  std::map<std::string, std::vector<ExperimentRecord>> groups;
  for (const auto& r : records) groups[r.experiment + "-" + r.timestamp].push_back(r);
  for (const auto& [stem, group] : groups) {
    const fs::path path = root / "results" / (stem + ".csv");
    write_atomically(path, render_csv(group));
    out.csv.push_back(path);
  }

  out.registry = root / "registry.jsonl";
  {
    std::ofstream os(out.registry, std::ios::app);
    if (!os) throw IoError("cannot append to " + out.registry.string());
    for (const auto& r : records) os << r.to_json().dump() << '\n';
    if (!os) throw IoError("failed appending to " + out.registry.string());
  }

  for (const auto& r : records) {
    for (const auto& series : r.plots) {
      const fs::path path = root / "plots" / (r.experiment + "-" + series.name + ".dat");
      std::ostringstream os;
      if (!series.header.empty()) os << "# " << series.header << '\n';
      for (const auto& row : series.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << format_number(row[i]);
        os << '\n';
      }
      write_atomically(path, os.str());
      out.plots.push_back(path);
    }
  }
  return out;
}

}  // namespace fracheat
