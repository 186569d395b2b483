#include "fracheat/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fracheat/errors.hpp"

namespace fracheat {

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = {
      {"alpha", ValueKind::Real, "fractional order in (0, 1]"},
      {"s", ValueKind::Real, "regularity index"},
      {"q", ValueKind::Real, "summability index in [1, inf]"},
      {"family", ValueKind::Text, "initial data family: phiN, psiN, phiNR"},
      {"N_min", ValueKind::Integer, "smallest family index"},
      {"N_max", ValueKind::Integer, "largest family index"},
      {"lambda", ValueKind::Real, "torus period"},
      {"modes", ValueKind::Integer, "number of Fourier modes (power of two)"},
      {"dt", ValueKind::Real, "time step"},
      {"T", ValueKind::Real, "time horizon"},
      {"tol", ValueKind::Real, "Picard tolerance"},
      {"seed", ValueKind::Integer, "seed of randomized probe families"},
      {"t", ValueKind::Real, "evaluation time"},
      {"K", ValueKind::Integer, "Picard series order"},
      {"sign", ValueKind::Real, "coefficient of the Duhamel term (-1, 0, +1)"},
      {"max_modes", ValueKind::Integer, "mode budget per grid"},
      {"s2", ValueKind::Real, "target regularity of the smoothing estimate"},
      {"amplitude", ValueKind::Real, "B^{s,q} norm of the small initial datum"},
      {"N_factor", ValueKind::Integer, "ratio between consecutive N of a geometric sweep"},
  };
  return schema;
}

namespace {

const ConfigKey* find_key(const std::string& name) {
  const auto& schema = config_schema();
  auto it = std::find_if(schema.begin(), schema.end(), [&](const ConfigKey& k) { return k.name == name; });
  return it == schema.end() ? nullptr : &*it;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_real(const std::string& text, const std::string& where) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError(where + ": expected a real number, got '" + text + "'");
  }
  return v;
}

std::int64_t parse_integer(const std::string& text, const std::string& where) {
  std::int64_t v = 0;
  int base = 10;
  std::string body = text;
  bool negative = false;
  if (!body.empty() && body[0] == '-') {
    negative = true;
    body = body.substr(1);
  }
  if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    base = 16;
    body = body.substr(2);
  }
  const auto* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(body.data(), last, v, base);
  if (body.empty() || ec != std::errc{} || ptr != last) {
    throw ConfigError(where + ": expected an integer, got '" + text + "'");
  }
  return negative ? -v : v;
}

void ExperimentConfig::set(const std::string& key, const std::string& value, const std::string& origin) {
  const auto* spec = find_key(key);
  const std::string where = origin + ": " + key;
  if (!spec) throw ConfigError(origin + ": unknown key '" + key + "'");
  switch (spec->kind) {
    case ValueKind::Real: {
      const double v = parse_real(value, where);
      if (std::isinf(v) && key != "q") throw ConfigError(where + ": must be finite");
      break;
    }
    case ValueKind::Integer:
      (void)parse_integer(value, where);
      break;
    case ValueKind::Text:
      if (value.empty()) throw ConfigError(where + ": empty value");
      break;
  }
  values_[key] = value;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str(), path.string());
}

double ExperimentConfig::real(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_real(it->second, key);
}

std::int64_t ExperimentConfig::integer(const std::string& key, std::int64_t fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_integer(it->second, key);
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  for (const auto& [k, v] : values_) os << k << " = " << v << '\n';
  return os.str();
}

}  // namespace fracheat
