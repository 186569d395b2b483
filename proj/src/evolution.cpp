#include "fracheat/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracheat/besov.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/spectral.hpp"

namespace fracheat {

std::size_t SolveConfig::step_count() const {
  const double steps = horizon / dt;
  const double rounded = std::round(steps);
  if (rounded < 1.0 || std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
    throw DomainError("horizon must be a positive integer multiple of dt");
  }
  return static_cast<std::size_t>(rounded);
}

void SolveConfig::validate() const {
  if (!(dt > 0.0) || !(horizon >= dt)) throw DomainError("require 0 < dt <= T");
  if (!(picard_tol > 0.0)) throw DomainError("picard_tol must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (substeps < 1) throw DomainError("substeps must be >= 1");
  if (!(adaptive_rtol > 0.0)) throw DomainError("adaptive_rtol must be positive");
  if (s0) {
    const double a = alpha.value();
    const double v = *s0;
    if (!(v > 0.0 && v < 0.5) || !(v - s > 0.0 && v - s < a) || !(2.0 * v - 0.5 < s)) {
      throw DomainError("s0 must satisfy 0 < s0 < 1/2, 0 < s0 - s < alpha and 2 s0 - 1/2 < s");
    }
  }
  (void)step_count();
}

Trajectory free_evolution(const SpectralField& u0, FractionalOrder alpha, double horizon,
                          double dt) {
  SolveConfig probe;
  probe.horizon = horizon;
  probe.dt = dt;
  const std::size_t steps = probe.step_count();
  const auto symbol = symbol_table(u0.grid(), alpha);
  std::vector<SpectralField> fields;
  fields.reserve(steps + 1);
  fields.push_back(u0);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = dt * static_cast<double>(n);
    std::vector<Complex> c(u0.coeffs().begin(), u0.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-t * symbol[i]);
    fields.emplace_back(u0.grid(), std::move(c), u0.is_real());
  }
  return Trajectory(u0.grid(), dt, std::move(fields));
}

Trajectory duhamel_integrate(const Trajectory& source, FractionalOrder alpha) {
  if (source.empty()) throw DomainError("empty source trajectory");
  const auto& grid = source.grid();
  const auto decay = semigroup_multipliers(grid, source.dt(), alpha);
  const double half = 0.5 * source.dt();
  bool is_real = true;
  for (const auto& f : source.fields()) is_real = is_real && f.is_real();

  std::vector<SpectralField> out;
  out.reserve(source.size());
  std::vector<Complex> acc(grid.modes());
  out.emplace_back(grid, acc, is_real);
  for (std::size_t n = 0; n + 1 < source.size(); ++n) {
    const auto& f0 = source[n];
    const auto& f1 = source[n + 1];
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] = decay[i] * acc[i] + half * (decay[i] * f0[i] + f1[i]);
    }
    out.emplace_back(grid, acc, is_real);
  }
  return Trajectory(grid, source.dt(), std::move(out));
}

Trajectory square_trajectory(const Trajectory& traj) {
  std::vector<SpectralField> out;
  out.reserve(traj.size());
  for (const auto& f : traj.fields()) out.push_back(dealiased_square(f));
  return Trajectory(traj.grid(), traj.dt(), std::move(out));
}

namespace {

bool all_finite(std::span<const Complex> c) {
  return std::all_of(c.begin(), c.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

// One Picard sweep: free + sign * L(u^2). Returns nullopt-like empty vector
// and sets blowup time when a non-finite value appears.
std::optional<Trajectory> picard_map(const Trajectory& u, const Trajectory& free,
                                     const SolveConfig& config, std::optional<double>& blowup) {
  const auto& grid = u.grid();
  std::vector<SpectralField> squares;
  squares.reserve(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) {
    auto samples = to_physical_truncated(u[n].coeffs(), grid);
    for (auto& v : samples) v *= v;
    auto c = from_physical_truncated(samples, grid);
    if (!all_finite(c)) {
      blowup = u.time(n);
      return std::nullopt;
    }
    squares.emplace_back(grid, std::move(c), true);
  }
  const Trajectory duhamel = duhamel_integrate(Trajectory(grid, u.dt(), std::move(squares)), config.alpha);
  std::vector<SpectralField> next;
  next.reserve(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) {
    std::vector<Complex> c(free[n].coeffs().begin(), free[n].coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += config.sign * duhamel[n][i];
    if (!all_finite(c)) {
      blowup = u.time(n);
      return std::nullopt;
    }
    next.emplace_back(grid, std::move(c), true);
  }
  return Trajectory(grid, u.dt(), std::move(next));
}

}  // namespace

SolveResult fixed_point_solve(const SpectralField& u0, const SolveConfig& config) {
  config.validate();
  if (!u0.is_real()) throw SymmetryError("initial datum must be real");
  const Trajectory free = free_evolution(u0, config.alpha, config.horizon, config.dt);
  const auto partition = make_partition(u0.grid());

  IterationReport report;
  Trajectory current = free;
  for (int m = 1; m <= config.max_iter; ++m) {
    std::optional<double> blowup;
    auto next = picard_map(current, free, config, blowup);
    report.iterations = m;
    if (!next) {
      report.blowup_time = blowup;
      report.diverged = true;
      break;
    }
    const double diff = x_norm(*next - current, config.s, config.q, config.alpha, partition);
    report.difference_norms.push_back(diff);
    const auto& d = report.difference_norms;
    if (d.size() >= 2 && d[d.size() - 2] > 0.0) {
      report.contraction_factor = std::max(report.contraction_factor, diff / d[d.size() - 2]);
    }
    current = std::move(*next);
    if (!std::isfinite(diff)) {
      report.diverged = true;
      break;
    }
    if (diff < config.picard_tol) {
      report.converged = true;
      break;
    }
    // Differences growing by orders of magnitude: the map is not contracting.
    if (d.size() >= 2 && diff > 1e6 * d.front()) {
      report.diverged = true;
      break;
    }
  }
  if (!report.converged && !report.blowup_time) report.diverged = true;
  return SolveResult{std::move(current), std::move(report)};
}

double integral_residual(const Trajectory& u, const SpectralField& u0, const SolveConfig& config) {
  const Trajectory free = free_evolution(u0, config.alpha, u.horizon(), u.dt());
  const Trajectory duhamel = duhamel_integrate(square_trajectory(u), config.alpha);
  double worst = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n) {
    std::vector<Complex> r(u[n].coeffs().begin(), u[n].coeffs().end());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= free[n][i] + config.sign * duhamel[n][i];
    worst = std::max(worst, SpectralField(u.grid(), std::move(r), false).l2_norm());
  }
  return worst;
}

double weighted_sup_norm(const Trajectory& traj, double s0, double s, FractionalOrder alpha) {
  if (!(s0 > s)) throw DomainError("weighted norm requires s0 > s");
  if (traj.size() < 2) throw DomainError("weighted norm needs a node with t > 0");
  const double power = (s0 - s) / (2.0 * alpha.value());
  double best = 0.0;
  for (std::size_t n = 1; n < traj.size(); ++n) {
    best = std::max(best, std::pow(traj.time(n), power) * sobolev_norm(traj[n], s0));
  }
  return best;
}

double smoothing_mode_ratio(double xi, double s1, double s2, FractionalOrder alpha, double t) {
  const double gap = s2 - s1;
  return std::pow(1.0 + xi * xi, 0.5 * gap) * std::exp(-t * fractional_symbol(xi, alpha)) *
         std::pow(t, gap / (2.0 * alpha.value()));
}

std::vector<SpectralField> smoothing_mode_probes(const TorusGrid& grid, std::size_t count) {
  const auto top = static_cast<double>(grid.modes() / 2 - 1);
  std::vector<std::ptrdiff_t> ks;
  for (std::size_t n = 0; n < count; ++n) {
    const double frac = count > 1 ? static_cast<double>(n) / static_cast<double>(count - 1) : 0.0;
    const auto k = static_cast<std::ptrdiff_t>(std::llround(std::pow(top, frac)));
    if (ks.empty() || ks.back() != k) ks.push_back(k);
  }
  std::vector<SpectralField> probes;
  probes.reserve(ks.size());
  for (auto k : ks) {
    std::vector<Complex> c(grid.modes());
    c[grid.slot(k)] = 0.5;
    c[grid.slot(-k)] = 0.5;
    probes.emplace_back(grid, std::move(c), true);
  }
  return probes;
}

double smoothing_constant(double s1, double s2, FractionalOrder alpha, double t,
                          std::span<const SpectralField> probes) {
  if (!(s2 >= s1)) throw DomainError("smoothing constant requires s2 >= s1");
  if (!(t > 0.0)) throw DomainError("smoothing constant requires t > 0");
  const double weight = std::pow(t, (s2 - s1) / (2.0 * alpha.value()));
  double best = 0.0;
  for (const auto& f : probes) {
    const double denom = sobolev_norm(f, s1);
    if (denom == 0.0) continue;
    best = std::max(best, sobolev_norm(apply_semigroup(f, t, alpha), s2) * weight / denom);
  }
  return best;
}

double existence_time_exponent(ExistenceRegime regime, FractionalOrder alpha, double s) {
  const double a = alpha.value();
  switch (regime) {
    case ExistenceRegime::Subcritical:
      if (!(a > 0.5)) throw DomainError("subcritical existence time needs alpha > 1/2");
      return -4.0 * a / (2.0 * a - 1.0);
    case ExistenceRegime::Critical: {
      const double sc = 0.5 - 2.0 * a;
      if (!(s > sc)) throw DomainError("existence time power law needs s > 1/2 - 2 alpha");
      return -2.0 * a / (s - sc);
    }
    case ExistenceRegime::SobolevHalf:
      if (std::abs(s - 0.5) > 1e-12) throw DomainError("s-half regime needs s = 1/2");
      return -4.0 / 3.0;
  }
  throw DomainError("unknown existence regime");
}

double existence_time_estimate(double u0_norm, FractionalOrder alpha, double s,
                               ExistenceRegime regime) {
  if (!(u0_norm >= 0.0)) throw DomainError("initial norm must be nonnegative");
  const double p = existence_time_exponent(regime, alpha, s);
  if (regime == ExistenceRegime::Subcritical) return std::pow(1.0 + u0_norm, p);
  return std::pow(u0_norm, p);
}

Trajectory dilation_rescale(const Trajectory& traj, double scale, FractionalOrder alpha) {
  if (!(scale > 0.0)) throw DomainError("dilation scale must be positive");
  const double period = traj.grid().period() / scale;
  if (!(period >= 1.0)) {
    throw ResamplingError("dilated torus period " + std::to_string(period) + " is below 1");
  }
  const TorusGrid target(period, traj.grid().modes());
  const double amp = std::pow(scale, 2.0 * alpha.value());
  std::vector<SpectralField> out;
  out.reserve(traj.size());
  for (const auto& f : traj.fields()) {
    std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
    for (auto& v : c) v *= amp;
    out.emplace_back(target, std::move(c), f.is_real());
  }
  return Trajectory(target, traj.dt() / amp, std::move(out));
}

}  // namespace fracheat
