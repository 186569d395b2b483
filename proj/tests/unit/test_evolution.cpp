#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracheat/besov.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/evolution.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/spectral.hpp"
#include "helpers.hpp"

using namespace fracheat;
using fracheat::test::max_diff;
using fracheat::test::random_field;
using fracheat::test::single_mode;

namespace {
constexpr double kPi = std::numbers::pi;

Trajectory constant_source(const SpectralField& g, double T, std::size_t n) {
  return Trajectory(g.grid(), T / static_cast<double>(n), std::vector<SpectralField>(n + 1, g));
}

SolveConfig small_config() {
  SolveConfig cfg;
  cfg.alpha = FractionalOrder(0.75);
  cfg.horizon = 1.0;
  cfg.dt = 1.0 / 64.0;
  cfg.picard_tol = 1e-12;
  return cfg;
}
}  // namespace

TEST_CASE("solver settings validation") {
  auto cfg = small_config();
  CHECK(cfg.step_count() == 64);
  cfg.dt = 0.3;
  CHECK_THROWS_AS(cfg.step_count(), DomainError);
  cfg = small_config();
  cfg.picard_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("duhamel integral of simple sources") {
  const TorusGrid g(2.0 * kPi, 32);
  const FractionalOrder a(0.75);
  const auto zero = duhamel_integrate(constant_source(SpectralField::zeros(g), 1.0, 10), a);
  for (std::size_t n = 0; n < zero.size(); ++n) CHECK(zero[n].max_abs() == 0.0);

  const auto dc = duhamel_integrate(constant_source(single_mode(g, 0, 2.5), 1.0, 10), a);
  for (std::size_t n = 0; n < dc.size(); ++n) {
    CHECK(std::abs(dc[n][0].real() - 2.5 * dc.time(n)) < 1e-14);
  }
}

TEST_CASE("duhamel integral is second order") {
  const TorusGrid g(2.0 * kPi, 32);
  const FractionalOrder a(1.0);
  const auto src = single_mode(g, 3, 1.0);
  const double lam = 9.0, T = 1.0;
  const double exact = (1.0 - std::exp(-T * lam)) / lam;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n : {16, 32, 64, 128, 256}) {
    const auto I = duhamel_integrate(constant_source(src, T, n), a);
    pts.emplace_back(T / n, std::abs(I.back().at_wavenumber(3).real() - exact));
  }
  const auto fit = fit_exponent(pts);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("fixed point solve: trivial cases") {
  const TorusGrid g(8.0 * kPi, 128);
  auto cfg = small_config();
  const auto zero = fixed_point_solve(SpectralField::zeros(g), cfg);
  CHECK(zero.report.converged);
  CHECK(zero.report.iterations == 1);
  CHECK(sup_l2(zero.solution) == 0.0);

  cfg.sign = 0.0;
  const auto u0 = random_field(g, 20, 8).scaled(0.1);
  const auto lin = fixed_point_solve(u0, cfg);
  const auto free = free_evolution(u0, cfg.alpha, cfg.horizon, cfg.dt);
  CHECK(sup_l2(lin.solution - free) < 1e-15);
}

TEST_CASE("small data contract and satisfy the integral equation") {
  const TorusGrid g(8.0 * kPi, 128);
  const auto cfg = small_config();
  auto u0 = SpectralField::from_transform(g, [](double xi) { return std::exp(-xi * xi / 8.0); });
  const double n = besov_norm(u0, BesovIndex(-0.75, 2.0), make_partition(g)).value;
  u0 = u0.scaled(0.01 / n);
  const auto r = fixed_point_solve(u0, cfg);
  CHECK(r.report.converged);
  CHECK(r.report.contraction_factor < 0.5);
  CHECK(integral_residual(r.solution, u0, cfg) < 10.0 * cfg.picard_tol);
  CHECK_FALSE(r.report.blowup_time.has_value());
}

TEST_CASE("large data of the focusing sign are flagged") {
  const TorusGrid g(8.0 * kPi, 64);
  auto cfg = small_config();
  cfg.sign = 1.0;
  cfg.horizon = 4.0;
  cfg.max_iter = 200;
  const auto u0 = single_mode(g, 0, 50.0);
  const auto r = fixed_point_solve(u0, cfg);
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.diverged);
}

TEST_CASE("weighted sup norm") {
  const TorusGrid g(2.0 * kPi, 128);
  const FractionalOrder a(0.75);
  const double s = -0.2, s0 = 0.1;
  const Trajectory zero(g, 0.1, {SpectralField::zeros(g), SpectralField::zeros(g)});
  CHECK(weighted_sup_norm(zero, s0, s, a) == 0.0);
  double cmax = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u0 = random_field(g, 40, seed);
    const auto tr = free_evolution(u0, a, 1.0, 1.0 / 32.0);
    const double w = weighted_sup_norm(tr, s0, s, a);
    CHECK(weighted_sup_norm(tr.scaled(5.0), s0, s, a) == doctest::Approx(5.0 * w).epsilon(1e-14));
    cmax = std::max(cmax, w / sobolev_norm(u0, s));
  }
  MESSAGE("empirical weighted-norm constant " << cmax);
  CHECK(cmax < 2.0);
}

TEST_CASE("smoothing constant") {
  const TorusGrid g(128.0 * kPi, 4096);
  const FractionalOrder a(1.0);
  const auto probes = smoothing_mode_probes(g, 200);
  CHECK(smoothing_constant(0.0, 0.0, a, 0.1, probes) <= 1.0);
  const double xi = 3.0, t = 0.01;
  CHECK(smoothing_mode_ratio(xi, -1.0, 0.0, a, t) ==
        doctest::Approx(std::pow(1.0 + xi * xi, 0.5) * std::exp(-t * xi * xi) * std::pow(t, 0.5)));
  CHECK_THROWS_AS(smoothing_constant(0.0, -1.0, a, 0.1, probes), DomainError);
}

TEST_CASE("existence time exponents") {
  CHECK(existence_time_exponent(ExistenceRegime::Critical, FractionalOrder(0.5), 0.0) == doctest::Approx(-2.0));
  for (double a : {0.3, 0.6, 1.0}) {
    CHECK(existence_time_exponent(ExistenceRegime::SobolevHalf, FractionalOrder(a), 0.5) ==
          doctest::Approx(-4.0 / 3.0));
  }
  CHECK_THROWS_AS(existence_time_exponent(ExistenceRegime::Subcritical, FractionalOrder(0.4), 0.0), DomainError);
  CHECK(existence_time_estimate(2.0, FractionalOrder(0.5), 0.0, ExistenceRegime::Critical) ==
        doctest::Approx(0.25));
}

TEST_CASE("dilation") {
  const TorusGrid g(8.0 * kPi, 128);
  const FractionalOrder a(0.75);
  const auto tr = free_evolution(random_field(g, 30, 1), a, 1.0, 1.0 / 16.0);
  const auto same = dilation_rescale(tr, 1.0, a);
  CHECK(same.grid() == g);
  CHECK(sup_l2(same - tr) == 0.0);

  const auto d = dilation_rescale(tr, 0.5, a);
  const auto direct = free_evolution(d[0], a, d.horizon(), d.dt());
  CHECK(sup_l2(d - direct) < 1e-10);
  CHECK_THROWS_AS(dilation_rescale(tr, 100.0, a), ResamplingError);
}
