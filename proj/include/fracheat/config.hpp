#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fracheat {

enum class ValueKind { Real, Integer, Text };

struct ConfigKey {
  std::string name;
  ValueKind kind;
  std::string help;
};

/// The documented key schema.
const std::vector<ConfigKey>& config_schema();

/// Flat typed key-value configuration.
///
/// File grammar: one `key = value` per line, `#` starts a comment, blank
/// lines are ignored. Values are checked against the schema when set; q
/// accepts `inf`, integers accept hex (0x5EED).
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text, const std::string& origin = "<string>");
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Validates and stores one value; `origin` prefixes error messages.
  void set(const std::string& key, const std::string& value, const std::string& origin = "cli");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  double real(const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;

  /// Canonical serialization, keys sorted.
  std::string serialize() const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(const std::string& text, const std::string& where);
std::int64_t parse_integer(const std::string& text, const std::string& where);

}  // namespace fracheat
