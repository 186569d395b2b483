#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fracheat/besov.hpp"
#include "fracheat/config.hpp"
#include "fracheat/evolution.hpp"
#include "fracheat/experiments.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/picard.hpp"
#include "fracheat/spectral.hpp"

using namespace fracheat;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double v) { return format_number(v); }

// Runs an experiment and folds its verdicts into one outcome.
Outcome experiment(const std::string& name, const std::string& config, const std::string& measured_key = {}) {
  const auto rec = run_experiment(name, ExperimentConfig::parse(config, name));
  std::ostringstream os;
  os << name;
  if (!config.empty()) {
    std::string c = config;
    for (auto& ch : c) {
      if (ch == '\n') ch = ' ';
    }
    os << " [" << c << "]";
  }
  for (const auto& [v, ok] : rec.verdicts) {
    if (!ok) os << " failed:" << v;
  }
  if (!measured_key.empty() && rec.measured.contains(measured_key)) {
    os << " " << measured_key << "=" << rec.measured[measured_key].dump();
  }
  return {rec.passed(), os.str()};
}

Outcome all_of(const std::vector<Outcome>& parts) {
  Outcome out{true, ""};
  for (const auto& p : parts) {
    out.pass = out.pass && p.pass;
    out.detail += (out.detail.empty() ? "" : "; ") + p.detail;
  }
  return out;
}

SpectralField random_field(const TorusGrid& grid, std::ptrdiff_t band, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(grid.modes());
  c[0] = g(rng);
  for (std::ptrdiff_t k = 1; k <= band; ++k) {
    const Complex v(g(rng), g(rng));
    c[grid.slot(k)] = v;
    c[grid.slot(-k)] = std::conj(v);
  }
  return SpectralField(grid, std::move(c), true);
}

Outcome partition_of_unity() {
  double pou = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double xi = 1e-3 * i * std::exp2(i % 11);
    double s = 0.0;
    for (int j = -1; j < 40; ++j) s += DyadicPartition::weight(j, xi);
    pou = std::max(pou, std::abs(s - 1.0));
  }
  const TorusGrid grid(2.0 * kPi, 1024);
  const auto P = make_partition(grid);
  const std::vector<double> regularities{-0.75, 0.0, 0.5};

  // Norm ratio H^s / B^{s,2} is a weighted mean of the pointwise weight ratio.
  std::vector<std::pair<double, double>> brackets;
  for (double s : regularities) {
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < grid.modes(); ++i) {
      const double xi = grid.frequency(i);
      double w = 0.0;
      for (int j = -1; j <= P.j_max(); ++j) w += std::pow(DyadicPartition::weight(j, xi), 2) * std::exp2(2.0 * j * s);
      const double r = std::sqrt(std::pow(1.0 + xi * xi, s) / w);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    brackets.emplace_back(lo, hi);
  }

  std::mt19937_64 rng(0x5EED);
  double recon = 0.0;
  bool monotone = true, bracket = true;
  for (int f = 0; f < 100; ++f) {
    const auto u = random_field(grid, grid.dealias_cutoff(), rng);
    auto acc = SpectralField::zeros(grid);
    for (int j = -1; j <= P.j_max(); ++j) acc = acc + lp_block(u, j, P);
    for (std::size_t i = 0; i < grid.modes(); ++i) recon = std::max(recon, std::abs(acc[i] - u[i]) / u.max_abs());
    for (std::size_t m = 0; m < regularities.size(); ++m) {
      const double s = regularities[m];
      const double b1 = besov_norm(u, BesovIndex(s, 1.0), P).value;
      const double b2 = besov_norm(u, BesovIndex(s, 2.0), P).value;
      const double b4 = besov_norm(u, BesovIndex(s, 4.0), P).value;
      const double bi = besov_norm(u, BesovIndex(s, kInf), P).value;
      monotone = monotone && bi <= b4 * (1 + 1e-14) && b4 <= b2 * (1 + 1e-14) && b2 <= b1 * (1 + 1e-14);
      const double r = sobolev_norm(u, s) / b2;
      bracket = bracket && r >= brackets[m].first * (1 - 1e-12) && r <= brackets[m].second * (1 + 1e-12);
    }
  }
  const bool ok = pou < 1e-12 && recon < 1e-12 && monotone && bracket;
  return {ok, "partition deviation " + fmt(pou) + ", reconstruction " + fmt(recon) + ", q-monotone " +
                  (monotone ? "yes" : "no") + ", H^s bracket " + (bracket ? "yes" : "no")};
}

Outcome kernel_seam() {
  const FractionalOrder one(1.0);
  // alpha = 1 and t = 1: xi = 0 gives theta t = -1e-6, xi = 2 xi1 gives +1e-6.
  const double xi1 = std::sqrt(5e-7);
  double seam = 0.0;
  for (double xi : {0.0, 2.0 * xi1}) {
    const auto k = [&](double f) { return duhamel_kernel(xi * f, xi1 * f, 1.0, one); };
    seam = std::max(seam, std::abs(k(1.0 - 1e-12) - k(1.0 + 1e-12)));
  }
  std::mt19937_64 rng(0x5EED);
  std::uniform_real_distribution<double> freq(-1e3, 1e3), time(0.0, 1.0), order(0.05, 1.0);
  std::size_t bad = 0;
  for (int i = 0; i < 1000000; ++i) {
    const double xi = freq(rng), xi1 = freq(rng), t = time(rng);
    const double v = duhamel_kernel(xi, xi1, t, FractionalOrder(order(rng)));
    if (!(v >= 0.0) || !std::isfinite(v)) ++bad;
  }
  return {seam < 1e-10 && bad == 0, "seam mismatch " + fmt(seam) + ", non-positive samples " + std::to_string(bad)};
}

Outcome duhamel_order() {
  const TorusGrid grid(2.0 * kPi, 32);
  const FractionalOrder a(0.75);
  std::vector<Complex> c(grid.modes());
  c[grid.slot(3)] = c[grid.slot(-3)] = 1.0;
  const SpectralField g(grid, c, true);
  const double sym = fractional_symbol(3.0, a), T = 1.0;
  const double exact = (1.0 - std::exp(-T * sym)) / sym;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = 16; n <= 512; n *= 2) {
    const Trajectory src(grid, T / static_cast<double>(n), std::vector<SpectralField>(n + 1, g));
    const auto I = duhamel_integrate(src, a);
    pts.emplace_back(T / static_cast<double>(n), std::abs(I.back().at_wavenumber(3).real() - exact));
  }
  const auto fit = fit_exponent(pts);
  return {std::abs(fit.slope - 2.0) <= 0.1, "dt-halving slope " + fmt(fit.slope)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria = {
      {1, "semigroup exactness", 1.0, [] { return experiment("semigroup-check", "", "multiplier_error"); }},
      {2, "partition of unity and block reconstruction", 10.0, partition_of_unity},
      {3, "phi_N Besov scaling", 60.0,
       [] {
         return all_of({experiment("besov-scaling", "alpha = 1\ns = -1\nq = 2", "slope"),
                        experiment("besov-scaling", "alpha = 0.75\ns = -0.75\nq = 2", "slope"),
                        experiment("besov-scaling", "alpha = 0.75\ns = 0\nq = 4", "slope")});
       }},
      {4, "psi_N endpoint scaling", 120.0,
       [] {
         std::vector<Outcome> parts;
         for (const char* q : {"2", "4", "8"}) {
           parts.push_back(
               experiment("besov-scaling", std::string("family = psiN\nalpha = 0.75\ns = -0.75\nq = ") + q, "slope"));
         }
         return all_of(parts);
       }},
      {5, "cascade lower bound", 300.0,
       [] {
         std::vector<Outcome> parts;
         for (const char* a : {"0.6", "0.75", "1"}) {
           parts.push_back(experiment(
               "cascade", std::string("alpha = ") + a + "\nt = 0.5\nN_min = 512\nN_max = 4096\nN_factor = 8",
               "max_relative_disagreement"));
         }
         return all_of(parts);
       }},
      {6, "kernel seam and positivity", 5.0, kernel_seam},
      {7, "Duhamel order", 10.0, duhamel_order},
      {8, "small-data contraction", 120.0,
       [] { return experiment("solve", "alpha = 0.75\namplitude = 0.01\nT = 1\nK = 6", "contraction_factor"); }},
      {9, "smoothing law", 30.0, [] { return experiment("smoothing-check", "", "max_relative_gap"); }},
      {10, "norm inflation surrogate", 900.0,
       [] { return experiment("norm-inflation", "N_min = 8\nN_max = 16", "rate_bracket_width"); }},
      {11, "phase diagram", 1800.0, [] { return experiment("phase-diagram", "", "mismatches"); }},
      {12, "dilation symmetry", 60.0, [] { return experiment("dilation-check", "", "max_residual"); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s (%.2fs of %.0fs%s) %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                c.budget_seconds, in_time ? "" : ", over budget", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
