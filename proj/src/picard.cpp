#include "fracheat/picard.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fracheat/besov.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/spectral.hpp"

namespace fracheat {

double theta(double xi, double xi1, FractionalOrder alpha) noexcept {
  return fractional_symbol(xi, alpha) - fractional_symbol(xi1, alpha) -
         fractional_symbol(xi - xi1, alpha);
}

double duhamel_kernel(double xi, double xi1, double t, FractionalOrder alpha) noexcept {
  if (!(t > 0.0)) return 0.0;
  const double b = fractional_symbol(xi, alpha);
  const double a = fractional_symbol(xi1, alpha) + fractional_symbol(xi - xi1, alpha);
  const double th = b - a;
  const double x = th * t;
  if (std::abs(x) < 1e-6) return t * std::exp(-b * t) * (1.0 + x / 2.0 + x * x / 6.0);
  // Factor out the slower exponential so nothing overflows.
  if (th < 0.0) return std::exp(-b * t) * std::expm1(x) / th;
  return -std::exp(-a * t) * std::expm1(-x) / th;
}

SecondIterateSum::SecondIterateSum(Profile phi_hat, const TorusGrid& grid)
    : phi_hat_(std::move(phi_hat)), period_(grid.period()) {
  const auto half = static_cast<std::ptrdiff_t>(grid.modes() / 2);
  const double h = grid.spacing();
  if (phi_hat_(h * static_cast<double>(half)) != 0.0 ||
      phi_hat_(-h * static_cast<double>(half)) != 0.0) {
    throw ResolutionError("profile support reaches the edge of the lattice band");
  }
  for (std::ptrdiff_t k = -half + 1; k < half; ++k) {
    const double xi1 = h * static_cast<double>(k);
    const double v = phi_hat_(xi1);
    if (!std::isfinite(v)) throw DomainError("profile is not finite");
    if (v != 0.0) {
      xi1_.push_back(xi1);
      weight_.push_back(v);
    }
  }
}

double SecondIterateSum::operator()(double xi, double t, FractionalOrder alpha) const {
  if (t < 0.0) throw DomainError("second iterate needs t >= 0");
  double sum = 0.0;
  for (std::size_t i = 0; i < xi1_.size(); ++i) {
    const double partner = phi_hat_(xi - xi1_[i]);
    if (partner == 0.0) continue;
    sum += weight_[i] * partner * duhamel_kernel(xi, xi1_[i], t, alpha);
  }
  return 2.0 * sum / period_;
}

double second_iterate_hat(const SecondIterateSum::Profile& phi_hat, double t, double xi,
                          FractionalOrder alpha, const TorusGrid& grid) {
  return SecondIterateSum(phi_hat, grid)(xi, t, alpha);
}

namespace {

double sup_abs(const std::vector<Complex>& c) noexcept {
  double m = 0.0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

// State of the joint march: coefficients, current source and physical samples
// of every order.
struct SeriesState {
  std::vector<std::vector<Complex>> coeff;
  std::vector<std::vector<Complex>> source;
  std::vector<std::vector<double>> samples;
};

// Source of order k (1-based) from the physical samples of lower orders.
std::vector<Complex> order_source(const SeriesState& st, int k, double sign, const TorusGrid& grid) {
  std::vector<double> prod(grid.modes(), 0.0);
  for (int k1 = 1; k1 < k; ++k1) {
    const auto& a = st.samples[static_cast<std::size_t>(k1 - 1)];
    const auto& b = st.samples[static_cast<std::size_t>(k - k1 - 1)];
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] += a[i] * b[i];
  }
  auto c = from_physical_truncated(prod, grid);
  for (auto& v : c) v *= sign;
  return c;
}

// Advances `from` by h into `to` (which may alias `from`); returns the worst
// scaled local error.
double advance(const SeriesState& from, SeriesState& to, double h, double sign,
               const std::vector<double>& symbol, const TorusGrid& grid, double rtol) {
  const std::size_t M = grid.modes();
  const auto K = static_cast<int>(from.coeff.size());
  std::vector<double> decay(M);
  for (std::size_t i = 0; i < M; ++i) decay[i] = std::exp(-h * symbol[i]);

  auto& b1 = to.coeff[0];
  for (std::size_t i = 0; i < M; ++i) b1[i] = decay[i] * from.coeff[0][i];
  to.samples[0] = to_physical_truncated(b1, grid);

  double worst = 0.0;
  for (int k = 2; k <= K; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    auto f1 = order_source(to, k, sign, grid);
    const auto& f0 = from.source[idx];
    auto& bk = to.coeff[idx];
    double err = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      const Complex ef0 = decay[i] * f0[i];
      bk[i] = decay[i] * from.coeff[idx][i] + 0.5 * h * (ef0 + f1[i]);
      err = std::max(err, std::abs(f1[i] - ef0));
    }
    err *= 0.5 * h;
    const double scale = std::max(sup_abs(bk), h * sup_abs(f1));
    if (scale > 0.0) worst = std::max(worst, err / (rtol * scale));
    to.source[idx] = std::move(f1);
    to.samples[idx] = to_physical_truncated(bk, grid);
  }
  return worst;
}

}  // namespace

std::vector<PicardTerm> picard_terms(const SpectralField& seed, int K, const SolveConfig& config,
                                     PicardStats* stats) {
  if (K < 1) throw DomainError("Picard series needs K >= 1");
  if (!seed.is_real()) throw SymmetryError("Picard seed must be real");
  config.validate();
  const auto& grid = seed.grid();
  const std::size_t M = grid.modes();
  const std::size_t steps = config.step_count();
  const auto symbol = symbol_table(grid, config.alpha);

  double band_symbol = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    if (std::abs(grid.wavenumber(i)) <= grid.dealias_cutoff()) {
      band_symbol = std::max(band_symbol, symbol[i]);
    }
  }

  const auto Ku = static_cast<std::size_t>(K);
  SeriesState cur{std::vector<std::vector<Complex>>(Ku, std::vector<Complex>(M)),
                  std::vector<std::vector<Complex>>(Ku, std::vector<Complex>(M)),
                  std::vector<std::vector<double>>(Ku, std::vector<double>(M, 0.0))};
  cur.coeff[0].assign(seed.coeffs().begin(), seed.coeffs().end());
  cur.samples[0] = to_physical_truncated(cur.coeff[0], grid);
  if (K >= 2) cur.source[1] = order_source(cur, 2, config.sign, grid);
  // The fixed path updates in place; only the adaptive path needs a rollback copy.
  SeriesState next;
  if (config.adaptive) next = cur;

  std::vector<std::vector<SpectralField>> out(Ku);
  for (auto& o : out) o.reserve(steps + 1);
  auto record = [&] {
    for (std::size_t k = 0; k < Ku; ++k) out[k].emplace_back(grid, cur.coeff[k], true);
  };
  record();

  PicardStats local;
  local.min_step = config.dt;
  const double uniform = config.dt / static_cast<double>(config.substeps);
  if (!config.adaptive && uniform * band_symbol > 10.0) {
    throw ResolutionError("substep " + std::to_string(uniform) +
                          " too coarse for the band: h * max|xi|^{2a} = " +
                          std::to_string(uniform * band_symbol) + " > 10");
  }
  double h = config.adaptive && band_symbol > 0.0 ? std::min(uniform, 1.0 / band_symbol) : uniform;

  double tau = 0.0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double target = config.dt * static_cast<double>(n);
    if (!config.adaptive) {
      for (int m = 0; m < config.substeps; ++m) {
        advance(cur, cur, uniform, config.sign, symbol, grid, config.adaptive_rtol);
        ++local.accepted_steps;
      }
      local.min_step = uniform;
      tau = target;
      record();
      continue;
    }
    while (tau < target * (1.0 - 1e-14)) {
      const bool clipped = tau + h >= target * (1.0 - 1e-12);
      const double step = clipped ? target - tau : h;
      const double ratio =
          advance(cur, next, step, config.sign, symbol, grid, config.adaptive_rtol);
      const double factor = ratio > 0.0 ? std::clamp(0.9 / std::sqrt(ratio), 0.2, 2.0) : 2.0;
      if (ratio > 1.0) {
        ++local.rejected_steps;
        h = step * factor;
        if (h < 1e-300) throw ResolutionError("adaptive Picard step underflow");
        continue;
      }
      std::swap(cur, next);
      tau = clipped ? target : tau + step;
      ++local.accepted_steps;
      local.min_step = std::min(local.min_step, step);
      if (!clipped || factor < 1.0) h = step * factor;
    }
    record();
  }
  if (stats) *stats = local;

  std::vector<PicardTerm> terms;
  terms.reserve(Ku);
  for (std::size_t k = 0; k < Ku; ++k) {
    terms.push_back(PicardTerm{static_cast<int>(k) + 1, Trajectory(grid, config.dt, std::move(out[k]))});
  }
  return terms;
}

Trajectory picard_sum(const std::vector<PicardTerm>& terms) {
  if (terms.empty()) throw DomainError("empty Picard series");
  Trajectory sum = terms.front().trajectory;
  for (std::size_t k = 1; k < terms.size(); ++k) sum = sum + terms[k].trajectory;
  return sum;
}

double log_tail_bound(int k, int N, double R, double t, double C0) {
  if (k < 3) throw DomainError("tail bound is stated for k >= 3");
  if (!(R > 0.0) || !(t > 0.0) || !(C0 > 0.0)) throw DomainError("tail bound needs R, t, C0 > 0");
  const double kk = static_cast<double>(k);
  return kk * std::log(8.0) + (kk - 1.0) * std::log(C0) +
         0.5 * std::log(static_cast<double>(N) + std::log(kk)) + kk * std::log(R) +
         (2.0 * kk - 2.0) * static_cast<double>(N) / 2.0 * std::log(2.0) + std::log(kk) +
         (kk - 1.0) * std::log(t);
}

double tail_bound(int k, int N, double R, double t, double C0) {
  return std::exp(log_tail_bound(k, N, R, t, C0));
}

double log_modulation_growth_bound(int k, int N, double R, double t, double C0) {
  if (k < 1) throw DomainError("modulation bound needs k >= 1");
  if (!(R > 0.0) || !(C0 > 0.0) || t < 0.0) throw DomainError("modulation bound needs R, C0 > 0");
  const double kk = static_cast<double>(k);
  const double time_part = k == 1 ? 0.0 : (kk - 1.0) * std::log(t);
  return kk * std::log(4.0) + (kk - 1.0) * std::log(C0) + time_part + kk * std::log(R) +
         (2.0 * kk - 1.0) * static_cast<double>(N) / 2.0 * std::log(2.0);
}

double modulation_growth_bound(int k, int N, double R, double t, double C0) {
  return std::exp(log_modulation_growth_bound(k, N, R, t, C0));
}

double algebra_ratio(const TorusGrid& grid, int N, int pairs, std::uint64_t seed) {
  if (pairs < 1) throw DomainError("algebra ratio needs at least one pair");
  const double band = std::ldexp(1.0, N + 1);
  if (2.0 * band > grid.spacing() * static_cast<double>(grid.dealias_cutoff())) {
    throw ResolutionError("grid band cannot hold products of width 2^{N+2}");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    std::vector<Complex> c(grid.modes());
    const auto top = static_cast<std::ptrdiff_t>(std::floor(band / grid.spacing()));
    for (std::ptrdiff_t k = 0; k <= top; ++k) {
      const double v = unit(rng);
      c[grid.slot(k)] = v;
      c[grid.slot(-k)] = v;
    }
    return SpectralField(grid, std::move(c), true);
  };
  const double norm_scale = std::exp2(0.5 * N);
  double best = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const auto u = draw();
    const auto v = draw();
    const double r = modulation_norm(dealiased_product(u, v), N) /
                     (norm_scale * modulation_norm(u, N) * modulation_norm(v, N));
    best = std::max(best, r);
  }
  return best;
}

double estimate_algebra_constant(const TorusGrid& grid, int N, int pairs, std::uint64_t seed) {
  return 1.1 * algebra_ratio(grid, N, pairs, seed);
}

}  // namespace fracheat
