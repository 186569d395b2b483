#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "fracheat/config.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/evolution.hpp"
#include "fracheat/experiments.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/report.hpp"
#include "fracheat/trajectory_io.hpp"
#include "helpers.hpp"

using namespace fracheat;
namespace fs = std::filesystem;

namespace {
fs::path scratch_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("fracheat-unit-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}
}  // namespace

TEST_CASE("exponent fits") {
  std::vector<std::pair<double, double>> sq, inv;
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    sq.emplace_back(x, x * x);
    inv.emplace_back(x, 7.0 / std::sqrt(x));
  }
  const auto f1 = fit_exponent(sq);
  CHECK(f1.slope == doctest::Approx(2.0));
  CHECK(f1.residual < 1e-12);
  const auto f2 = fit_exponent(inv);
  CHECK(f2.slope == doctest::Approx(-0.5));
  CHECK(f2.intercept == doctest::Approx(std::log(7.0)));

  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  std::vector<std::pair<double, double>> noisy;
  for (int i = 0; i < 20; ++i) {
    const double x = std::exp2(i * 0.5);
    noisy.emplace_back(x, x * x * (1.0 + 0.01 * noise(rng)));
  }
  CHECK(std::abs(fit_exponent(noisy).slope - 2.0) < 0.05);
  CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}, {2.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(fit_exponent({{1.0, 1.0}, {2.0, -2.0}, {3.0, 1.0}}), DomainError);
}

TEST_CASE("config parsing and errors") {
  const auto cfg = ExperimentConfig::parse("alpha = 0.5  # order\n\nq = inf\nseed = 0x5EED\nfamily = psiN\n", "test.cfg");
  CHECK(cfg.real("alpha", 0.0) == 0.5);
  CHECK(std::isinf(cfg.real("q", 2.0)));
  CHECK(cfg.integer("seed", 0) == 0x5EED);
  CHECK(cfg.text("family", "") == "psiN");
  CHECK(cfg.real("s", -1.0) == -1.0);
  CHECK(ExperimentConfig::parse(cfg.serialize()).serialize() == cfg.serialize());

  try {
    (void)ExperimentConfig::parse("alpha = 0.5\nbogus = 1\n", "x.cfg");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("x.cfg:2") != std::string::npos);
  }
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha 0.5"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("alpha = abc"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("modes = 1.5"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/fracheat.cfg"), ConfigError);
}

TEST_CASE("run_experiment dispatch and budgets") {
  CHECK(experiment_names().size() == 10);
  const auto rec = run_experiment("semigroup-check", ExperimentConfig{});
  CHECK(rec.passed());
  CHECK(rec.measured["multiplier_error"].get<double>() < 1e-12);
  CHECK(rec.params["modes"].get<std::int64_t>() == 4096);

  CHECK_THROWS_AS(run_experiment("nope", ExperimentConfig{}), ConfigError);
  auto big = ExperimentConfig::parse("modes = 8192\nmax_modes = 4096\n");
  CHECK_THROWS_AS(run_experiment("semigroup-check", big), BudgetError);
  CHECK_THROWS_AS(run_experiment("besov-scaling", ExperimentConfig::parse("max_modes = 1024")), BudgetError);
  CHECK_THROWS_AS(run_experiment("besov-scaling", ExperimentConfig::parse("family = psiN\ns = 0")), ConfigError);
  CHECK_THROWS_AS(run_experiment("semigroup-check", ExperimentConfig::parse("alpha = 2")), ConfigError);
}

TEST_CASE("besov-scaling default record") {
  const auto rec = run_experiment("besov-scaling", ExperimentConfig::parse("alpha = 0.75\ns = -0.75"));
  CHECK(rec.passed());
  CHECK(std::abs(rec.measured["slope"].get<double>()) < 0.05);
}

TEST_CASE("report emission") {
  ExperimentRecord rec;
  rec.experiment = "demo";
  rec.timestamp = "20260101T000000Z";
  rec.version = "test";
  rec.params["alpha"] = 0.5;
  rec.columns = {"a", "b"};
  rec.rows = {{"1", "2"}};
  rec.plots.push_back({"curve", "x y", {{1.0, 2.0}, {2.0, 4.0}}});
  rec.verdict("ok", true);

  const auto root = scratch_dir("report");
  const auto files = emit_report({rec}, root);
  REQUIRE(files.csv.size() == 1);
  CHECK(files.csv[0] == root / "results" / "demo-20260101T000000Z.csv");
  CHECK(slurp(files.csv[0]) == "a,b\n1,2\n");
  const auto first = slurp(files.csv[0]);
  const auto reg1 = slurp(files.registry);
  CHECK(std::count(reg1.begin(), reg1.end(), '\n') == 1);
  CHECK(fs::exists(root / "plots" / "demo-curve.dat"));

  emit_report({rec}, root);
  CHECK(slurp(files.csv[0]) == first);
  const auto reg = slurp(files.registry);
  CHECK(std::count(reg.begin(), reg.end(), '\n') == 2);

  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(0.5) == "0.5");

  const auto locked = scratch_dir("locked");
  std::ofstream(locked / "results") << "not a directory";
  CHECK_THROWS_AS(emit_report({rec}, locked), IoError);
  CHECK_FALSE(fs::exists(locked / "results" / "demo-20260101T000000Z.csv"));
}

TEST_CASE("output root honours the environment") {
  ::setenv("FRACHEAT_RESULTS", "/tmp/fracheat-env-root", 1);
  CHECK(output_root() == fs::path("/tmp/fracheat-env-root"));
  ::unsetenv("FRACHEAT_RESULTS");
  CHECK(output_root("fallback") == fs::path("fallback"));
}

TEST_CASE("trajectory dumps round trip") {
  const TorusGrid g(8.0, 32);
  const auto tr = free_evolution(fracheat::test::random_field(g, 10, 4), FractionalOrder(0.75), 1.0, 0.25);
  for (auto fmt : {DumpFormat::Binary, DumpFormat::Text}) {
    std::stringstream ss;
    write_trajectory(ss, tr, fmt);
    const auto back = read_trajectory(ss, fmt);
    CHECK(back.grid() == g);
    CHECK(back.size() == tr.size());
    CHECK(sup_l2(back - tr) == 0.0);
  }
  std::stringstream junk("not a trajectory");
  CHECK_THROWS_AS(read_trajectory(junk, DumpFormat::Binary), IoError);
  CHECK_THROWS_AS(load_trajectory("/nonexistent/t.bin", DumpFormat::Binary), IoError);
}
