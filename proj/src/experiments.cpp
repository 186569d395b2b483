#include "fracheat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "fracheat/besov.hpp"
#include "fracheat/counterexamples.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/evolution.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/phase_diagram.hpp"
#include "fracheat/picard.hpp"
#include "fracheat/spectral.hpp"

#ifndef FRACHEAT_VERSION
#define FRACHEAT_VERSION "unknown"
#endif

namespace fracheat {

namespace {

constexpr double kPi = std::numbers::pi;

// Reads parameters with defaults and records the effective values.
class Params {
 public:
  Params(const ExperimentConfig& cfg, ExperimentRecord& rec) : cfg_(cfg), rec_(rec) {}

  double real(const std::string& key, double fallback) {
    const double v = cfg_.real(key, fallback);
    rec_.params[key] = std::isinf(v) ? Json("inf") : Json(v);
    return v;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const auto v = cfg_.integer(key, fallback);
    rec_.params[key] = v;
    return v;
  }
  std::string text(const std::string& key, const std::string& fallback) {
    auto v = cfg_.text(key, fallback);
    rec_.params[key] = v;
    return v;
  }
  FractionalOrder alpha(double fallback) {
    const double a = real("alpha", fallback);
    if (!(a > 0.0 && a <= 1.0)) throw ConfigError("alpha: must lie in (0, 1], got " + format_number(a));
    return FractionalOrder(a);
  }
  std::size_t budget() {
    const auto m = integer("max_modes", std::int64_t{1} << 22);
    if (m < 8) throw ConfigError("max_modes: must be >= 8");
    return static_cast<std::size_t>(m);
  }

 private:
  const ExperimentConfig& cfg_;
  ExperimentRecord& rec_;
};

void require_budget(const TorusGrid& grid, std::size_t budget) {
  if (grid.modes() > budget) {
    throw BudgetError("grid needs " + std::to_string(grid.modes()) + " modes, budget is " +
                      std::to_string(budget));
  }
}

TorusGrid checked_grid(double lambda, std::int64_t modes, std::size_t budget) {
  if (modes < 2 || (modes & (modes - 1)) != 0) {
    throw ConfigError("modes: must be a power of two >= 2, got " + std::to_string(modes));
  }
  if (static_cast<std::size_t>(modes) > budget) {
    throw BudgetError("modes " + std::to_string(modes) + " exceeds budget " + std::to_string(budget));
  }
  if (!(lambda >= 1.0)) throw ConfigError("lambda: torus period must be >= 1");
  return TorusGrid(lambda, static_cast<std::size_t>(modes));
}

std::vector<std::string> row(std::initializer_list<std::string> cells) { return cells; }
std::string num(double v) { return format_number(v); }
std::string flag(bool b) { return b ? "pass" : "fail"; }

// Random real field with Gaussian coefficients decaying like 1/(1+|k|).
SpectralField random_field(const TorusGrid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<Complex> c(grid.modes());
  const auto half = static_cast<std::ptrdiff_t>(grid.modes() / 2);
  c[0] = gauss(rng);
  for (std::ptrdiff_t k = 1; k < half; ++k) {
    const double w = 1.0 / (1.0 + static_cast<double>(k));
    const Complex v(gauss(rng) * w, gauss(rng) * w);
    c[grid.slot(k)] = v;
    c[grid.slot(-k)] = std::conj(v);
  }
  c[grid.slot(-half)] = gauss(rng) / (1.0 + static_cast<double>(half));
  return SpectralField(grid, std::move(c), true);
}

// Smooth bump on |xi| <= band, normalized to B^{s,q} norm `amplitude`.
SpectralField small_datum(const TorusGrid& grid, double band, double s, double q, double amplitude) {
  if (band > grid.spacing() * static_cast<double>(grid.dealias_cutoff())) {
    throw ConfigError("datum band exceeds the dealiased band of the grid");
  }
  auto raw = SpectralField::from_transform(grid, [band](double xi) {
    return std::abs(xi) <= band ? std::exp(-xi * xi / band) : 0.0;
  });
  const double n = besov_norm(raw, BesovIndex(s, q), make_partition(grid)).value;
  return raw.scaled(amplitude / n);
}

std::vector<double> geometric(std::int64_t lo, std::int64_t hi, std::int64_t factor) {
  if (lo < 1 || hi < lo) throw ConfigError("N_min/N_max: need 1 <= N_min <= N_max");
  if (factor < 2) throw ConfigError("N_factor: must be >= 2");
  std::vector<double> out;
  for (std::int64_t n = lo; n <= hi; n *= factor) out.push_back(static_cast<double>(n));
  return out;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

void semigroup_check(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(0.75);
  const auto grid = checked_grid(p.real("lambda", 2.0 * kPi), p.integer("modes", 4096), p.budget());
  const double t = p.real("t", 0.3);
  if (!(t > 0.0)) throw ConfigError("t: must be positive");
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.integer("seed", 0x5EED)));
  const auto u = random_field(grid, rng);
  const double scale = u.max_abs();

  const auto mult = semigroup_multipliers(grid, t, alpha);
  double mult_err = 0.0;
  double action_err = 0.0;
  const auto Su = apply_semigroup(u, t, alpha);
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    const long double xi = std::abs(static_cast<long double>(grid.frequency(i)));
    const long double exact = xi == 0.0L ? 1.0L : std::exp(-static_cast<long double>(t) *
                                                           std::pow(xi, 2.0L * alpha.value()));
    const double ref = static_cast<double>(exact);
    mult_err = std::max(mult_err, std::abs(mult[i] - ref) / std::max(ref, 2.2250738585072014e-308));
    action_err = std::max(action_err, std::abs(Su[i] - ref * u[i]) / scale);
  }
  const double t2 = 2.0 * t / 3.0;
  const auto composed = apply_semigroup(apply_semigroup(u, t2, alpha), t, alpha);
  const auto direct = apply_semigroup(u, t + t2, alpha);
  double law_err = 0.0;
  double id_err = 0.0;
  const auto S0 = apply_semigroup(u, 0.0, alpha);
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    law_err = std::max(law_err, std::abs(composed[i] - direct[i]) / scale);
    id_err = std::max(id_err, std::abs(S0[i] - u[i]) / scale);
  }

  rec.columns = {"check", "value", "tolerance", "verdict"};
  const double tol = 1e-12;
  for (const auto& [name, v] : std::vector<std::pair<std::string, double>>{
           {"multiplier", mult_err}, {"action", action_err}, {"semigroup_law", law_err}, {"identity", id_err}}) {
    rec.rows.push_back(row({name, num(v), num(tol), flag(v < tol)}));
    rec.measured[name + "_error"] = v;
    rec.verdict(name, v < tol);
  }
}

void besov_scaling(Params& p, ExperimentRecord& rec) {
  const Family fam = parse_family(p.text("family", "phiN"));
  const auto alpha = p.alpha(0.75);
  const double s = p.real("s", -alpha.value());
  const double q = p.real("q", 2.0);
  const BesovIndex idx(s, q);
  const auto budget = p.budget();

  std::vector<double> Ns;
  double lambda = 0.0;
  double expected = 0.0;
  double tol = 0.05;
  switch (fam) {
    case Family::PhiN:
      lambda = p.real("lambda", 32.0);
      Ns = geometric(p.integer("N_min", 64), p.integer("N_max", 4096), p.integer("N_factor", 2));
      expected = alpha.value() + s;
      break;
    case Family::PsiN: {
      lambda = p.real("lambda", 512.0);
      const auto lo = p.integer("N_min", 3);
      const auto hi = p.integer("N_max", 6);
      if (lo < 1 || hi < lo) throw ConfigError("N_min/N_max: need 1 <= N_min <= N_max");
      for (auto n = lo; n <= hi; ++n) Ns.push_back(static_cast<double>(n));
      if (std::abs(s + alpha.value()) > 1e-12) {
        throw ConfigError("s: the psiN scaling law is stated at s = -alpha");
      }
      expected = -0.5 + (std::isinf(q) ? 0.0 : 1.0 / q);
      tol = 0.1;
      break;
    }
    case Family::PhiNR: {
      lambda = p.real("lambda", 2.0 * kPi);
      const auto lo = p.integer("N_min", 4);
      const auto hi = p.integer("N_max", 10);
      if (lo < 1 || hi < lo) throw ConfigError("N_min/N_max: need 1 <= N_min <= N_max");
      for (auto n = lo; n <= hi; ++n) Ns.push_back(static_cast<double>(n));
      expected = s + 0.5;
      break;
    }
  }
  if (Ns.size() < 3) throw ConfigError("N_min/N_max: the fit needs at least 3 values of N");

  rec.columns = {"family", "N", "alpha", "s", "q", "norm"};
  std::vector<std::pair<double, double>> pts;
  PlotSeries plot{"norms-" + family_name(fam), "N norm", {}};
  for (double N : Ns) {
    double extent = 0.0;
    double x = N;
    switch (fam) {
      case Family::PhiN: extent = N + 3.0; break;
      case Family::PsiN: extent = std::ldexp(1.0, 2 * static_cast<int>(N)) + 3.0; break;
      case Family::PhiNR:
        extent = std::ldexp(1.0, static_cast<int>(N) + 2) + 1.0;
        x = std::ldexp(1.0, static_cast<int>(N));
        break;
    }
    const auto grid = grid_for_extent(lambda, extent);
    require_budget(grid, budget);
    FamilySpec spec{fam, static_cast<int>(N), alpha.value(), 1.0};
    const auto f = fam == Family::PhiN ? build_phi_N(N, alpha, grid) : build_family(spec, grid);
    const double norm = besov_norm(f, idx, make_partition(grid)).value;
    pts.emplace_back(x, norm);
    plot.rows.push_back({x, norm});
    rec.rows.push_back(row({family_name(fam), num(N), num(alpha.value()), num(s), num(q), num(norm)}));
  }
  const auto fit = fit_exponent(pts);
  rec.measured["slope"] = fit.slope;
  rec.measured["intercept"] = fit.intercept;
  rec.measured["fit_residual"] = fit.residual;
  rec.measured["fit_flagged"] = fit.flagged();
  rec.measured["expected_slope"] = expected;
  rec.measured["slope_tolerance"] = tol;
  rec.plots.push_back(std::move(plot));
  rec.verdict("slope", std::abs(fit.slope - expected) <= tol);
}

void smoothing_check(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(1.0);
  const double s1 = p.real("s", -1.0);
  const double s2 = p.real("s2", 0.0);
  if (s2 < s1) throw ConfigError("s2: must be >= s");
  const auto grid = checked_grid(p.real("lambda", 128.0 * kPi), p.integer("modes", 65536), p.budget());
  const auto probes = smoothing_mode_probes(grid, 2000);
  const std::vector<double> times{1e-3, 1e-2, 1e-1};

  rec.columns = {"t", "constant", "mode_formula", "relative_gap", "argmax_xi", "predicted_xi"};
  std::vector<double> constants;
  double worst_gap = 0.0;
  PlotSeries plot{"constants", "t constant", {}};
  for (double t : times) {
    const double measured = smoothing_constant(s1, s2, alpha, t, probes);
    double formula = 0.0;
    double argmax = 0.0;
    for (const auto& f : probes) {
      std::size_t slot = 1;
      while (f[slot] == Complex{}) ++slot;
      const double xi = grid.frequency(slot);
      const double r = smoothing_mode_ratio(xi, s1, s2, alpha, t);
      if (r > formula) {
        formula = r;
        argmax = xi;
      }
    }
    const double gap = formula > 0.0 ? std::abs(measured / formula - 1.0) : std::abs(measured);
    const double predicted =
        s2 > s1 ? std::pow((s2 - s1) / (2.0 * alpha.value()) / t, 1.0 / (2.0 * alpha.value())) : 0.0;
    worst_gap = std::max(worst_gap, gap);
    constants.push_back(measured);
    plot.rows.push_back({t, measured});
    rec.rows.push_back(row({num(t), num(measured), num(formula), num(gap), num(argmax), num(predicted)}));
  }
  auto sorted = constants;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  double spread = 0.0;
  for (double c : constants) spread = std::max(spread, std::abs(c / median - 1.0));
  rec.measured["max_relative_gap"] = worst_gap;
  rec.measured["median_constant"] = median;
  rec.measured["max_deviation_from_median"] = spread;
  rec.plots.push_back(std::move(plot));
  rec.verdict("mode_formula", worst_gap < 1e-6);
  rec.verdict("constant_stable", spread <= 0.1);
  if (s1 == s2) rec.verdict("contraction", sorted.back() <= 1.0 + 1e-12);
}

SolveConfig solve_config(Params& p, FractionalOrder alpha) {
  SolveConfig cfg;
  cfg.alpha = alpha;
  cfg.sign = p.real("sign", -1.0);
  cfg.horizon = p.real("T", 1.0);
  cfg.dt = p.real("dt", 1.0 / 256.0);
  cfg.picard_tol = p.real("tol", 1e-12);
  cfg.s = p.real("s", -alpha.value());
  cfg.q = p.real("q", 2.0);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("solver settings: ") + e.what());
  }
  return cfg;
}

void solve(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(0.75);
  const auto grid = checked_grid(p.real("lambda", 8.0 * kPi), p.integer("modes", 256), p.budget());
  const auto cfg = solve_config(p, alpha);
  const double amplitude = p.real("amplitude", 0.01);
  const auto K = p.integer("K", 6);
  if (K < 1 || K > 64) throw ConfigError("K: must lie in [1, 64]");
  const auto u0 = small_datum(grid, 8.0, cfg.s, cfg.q, amplitude);

  const auto result = fixed_point_solve(u0, cfg);
  const auto& r = result.report;
  const double residual = integral_residual(result.solution, u0, cfg);
  const auto terms = picard_terms(u0, static_cast<int>(K), cfg);
  const double series_gap = sup_l2(picard_sum(terms) - result.solution);

  rec.columns = {"iteration", "difference_norm"};
  PlotSeries plot{"differences", "iteration difference_norm", {}};
  for (std::size_t i = 0; i < r.difference_norms.size(); ++i) {
    rec.rows.push_back(row({std::to_string(i + 1), num(r.difference_norms[i])}));
    plot.rows.push_back({static_cast<double>(i + 1), r.difference_norms[i]});
  }
  rec.plots.push_back(std::move(plot));
  rec.measured["iterations"] = r.iterations;
  rec.measured["converged"] = r.converged;
  rec.measured["contraction_factor"] = r.contraction_factor;
  rec.measured["residual"] = residual;
  rec.measured["series_gap"] = series_gap;
  rec.measured["u0_l2"] = u0.l2_norm();
  if (r.blowup_time) rec.measured["blowup_time"] = *r.blowup_time;
  rec.verdict("converged", r.converged);
  rec.verdict("contraction_below_half", r.contraction_factor < 0.5);
  rec.verdict("residual_certificate", residual < 10.0 * cfg.picard_tol);
  rec.verdict("series_agreement", series_gap < 10.0 * cfg.picard_tol);
}

// ||D u0||_{B^{s,2}} / ||u0||_{B^{s,2}} for the dilation by `scale`.
double dilation_norm_ratio(const SpectralField& u0, double scale, FractionalOrder alpha, double s) {
  const Trajectory single(u0.grid(), 1.0, {u0});
  const auto dilated = dilation_rescale(single, scale, alpha);
  const BesovIndex idx(s, 2.0);
  return besov_norm(dilated[0], idx, make_partition(dilated.grid())).value /
         besov_norm(u0, idx, make_partition(u0.grid())).value;
}

void wellposed_scaling(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(0.75);
  const double s = p.real("s", -alpha.value());
  const auto grid = checked_grid(p.real("lambda", 8.0 * kPi), p.integer("modes", 256), p.budget());
  const auto u0 = small_datum(grid, 8.0, s, 2.0, p.real("amplitude", 1.0));
  const double a = alpha.value();

  rec.columns = {"scale", "norm_ratio", "bound"};
  std::vector<std::pair<double, double>> pts;
  bool all = true;
  PlotSeries plot{"norm-ratio", "scale norm_ratio bound", {}};
  for (double scale : {1.0, 0.5, 0.25, 0.125}) {
    const double r = dilation_norm_ratio(u0, scale, alpha, s);
    const double bound = std::pow(scale, a - 0.5);
    all = all && r <= 1.05 * bound;
    pts.emplace_back(scale, r);
    plot.rows.push_back({scale, r, bound});
    rec.rows.push_back(row({num(scale), num(r), num(bound)}));
  }
  const auto fit = fit_exponent(pts);
  rec.measured["ratio_slope"] = fit.slope;
  rec.measured["bound_slope"] = a - 0.5;
  if (a > 0.5) {
    rec.measured["existence_exponent_subcritical"] =
        existence_time_exponent(ExistenceRegime::Subcritical, alpha, s);
  }
  if (s > 0.5 - 2.0 * a) {
    rec.measured["existence_exponent_critical"] = existence_time_exponent(ExistenceRegime::Critical, alpha, s);
  }
  rec.measured["existence_exponent_s_half"] =
      existence_time_exponent(ExistenceRegime::SobolevHalf, alpha, 0.5);
  rec.plots.push_back(std::move(plot));
  rec.verdict("dilation_bound", all);
}

void dilation_check(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(0.75);
  const auto grid = checked_grid(p.real("lambda", 8.0 * kPi), p.integer("modes", 256), p.budget());
  auto cfg = solve_config(p, alpha);
  const auto u0 = small_datum(grid, 8.0, cfg.s, cfg.q, p.real("amplitude", 0.01));
  const auto solved = fixed_point_solve(u0, cfg);
  if (!solved.report.converged) throw ConfigError("dilation-check needs a converging solve");
  const double a = alpha.value();

  rec.columns = {"scale", "residual", "norm_ratio", "bound"};
  bool residual_ok = true;
  bool bound_ok = true;
  double worst = 0.0;
  for (double scale : {0.5, 0.25, 0.125}) {
    const auto traj = dilation_rescale(solved.solution, scale, alpha);
    SolveConfig scaled = cfg;
    scaled.dt = traj.dt();
    scaled.horizon = traj.horizon();
    const double residual = integral_residual(traj, traj[0], scaled);
    const double ratio = dilation_norm_ratio(u0, scale, alpha, -a);
    const double bound = std::pow(scale, a - 0.5);
    residual_ok = residual_ok && residual < 1e-8;
    bound_ok = bound_ok && ratio <= 1.05 * bound;
    worst = std::max(worst, residual);
    rec.rows.push_back(row({num(scale), num(residual), num(ratio), num(bound)}));
  }
  rec.measured["max_residual"] = worst;
  rec.measured["base_residual"] = integral_residual(solved.solution, u0, cfg);
  rec.verdict("rescaled_residual", residual_ok);
  rec.verdict("norm_bound", bound_ok);
}

void cascade(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(1.0);
  const double t = p.real("t", 0.5);
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("t: cascade time must lie in (0, 1)");
  const double lambda = p.real("lambda", 8.0 * kPi);
  if (2.0 * kPi / lambda > 0.25) throw ConfigError("lambda: lattice spacing must be <= 1/4");
  const auto Ns = geometric(p.integer("N_min", 512), p.integer("N_max", 4096), p.integer("N_factor", 8));
  const double rtol = p.real("tol", 1e-5);
  const auto budget = p.budget();

  rec.columns = {"N", "alpha", "t", "min_A2", "threshold", "theta_min", "theta_max", "agreement", "pairing", "verdict"};
  bool bounds = true, brackets = true, agree = true;
  double worst_agreement = 0.0;
  for (double N : Ns) {
    const auto grid = grid_for_band(lambda, 2.0 * (N + 2.0) + 1.0);
    require_budget(grid, budget);
    const auto report = verify_cascade(N, alpha, t, grid);
    const double pairing = pairing_lower_bound(N, alpha, t, grid);

    // Second way: the time-stepped recurrence term, doubled to match the
    // bilinear operator of the closed form.
    SolveConfig cfg;
    cfg.alpha = alpha;
    cfg.sign = 1.0;
    cfg.horizon = t;
    cfg.dt = t / 2.0;
    cfg.adaptive = true;
    cfg.adaptive_rtol = rtol;
    const auto terms = picard_terms(build_phi_N(N, alpha, grid), 2, cfg);
    const auto& stepped = terms[1].trajectory.back();
    const SecondIterateSum closed([N, a = alpha.value()](double xi) { return phi_N_profile(xi, N, a); }, grid);
    double diff = 0.0, peak = 0.0;
    const auto top = static_cast<std::ptrdiff_t>(std::floor(0.5 / grid.spacing()));
    for (std::ptrdiff_t k = -top; k <= top; ++k) {
      const double exact = closed(grid.spacing() * static_cast<double>(k), t, alpha);
      const double approx = 2.0 * grid.period() * stepped.at_wavenumber(k).real();
      diff = std::max(diff, std::abs(exact - approx));
      peak = std::max(peak, std::abs(exact));
    }
    const double agreement = peak > 0.0 ? diff / peak : diff;
    worst_agreement = std::max(worst_agreement, agreement);
    bounds = bounds && report.bound_pass;
    brackets = brackets && report.bracket_pass;
    agree = agree && agreement < 1e-3;

    PlotSeries plot{"scan-a" + num(alpha.value()) + "-N" + num(N), "xi A2_hat", {}};
    for (std::size_t i = 0; i < report.xi.size(); ++i) plot.rows.push_back({report.xi[i], report.values[i]});
    rec.plots.push_back(std::move(plot));
    rec.rows.push_back(row({num(N), num(alpha.value()), num(t), num(report.min_value), num(report.threshold),
                            num(report.theta_min), num(report.theta_max), num(agreement), num(pairing),
                            flag(report.pass() && agreement < 1e-3)}));
  }
  rec.measured["max_relative_disagreement"] = worst_agreement;
  rec.verdict("lower_bound", bounds);
  rec.verdict("resonance_bracket", brackets);
  rec.verdict("two_way_agreement", agree);
}

void endpoint_cascade(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(0.75);
  const double q = p.real("q", 4.0);
  const double s = p.real("s", -alpha.value());
  const double t = p.real("t", 0.5);
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("t: cascade time must lie in (0, 1)");
  const double lambda = p.real("lambda", 8.0 * kPi);
  if (2.0 * kPi / lambda > 0.25) throw ConfigError("lambda: lattice spacing must be <= 1/4");
  const auto lo = p.integer("N_min", 3);
  const auto hi = p.integer("N_max", 6);
  if (lo < 1 || hi <= lo || hi > 12) throw ConfigError("N_min/N_max: need 1 <= N_min < N_max <= 12");
  const auto budget = p.budget();
  const double threshold = 0.25 * std::exp(-t / 2.0);
  const double a = alpha.value();

  rec.columns = {"N", "norm", "min_A2", "threshold"};
  std::vector<double> norms;
  bool cascade_ok = true;
  for (auto n = lo; n <= hi; ++n) {
    const int N = static_cast<int>(n);
    const auto grid = grid_for_extent(lambda, std::ldexp(1.0, 2 * N) + 3.0);
    require_budget(grid, budget);
    const auto psi = build_psi_N(N, alpha, grid);
    const double norm = besov_norm(psi, BesovIndex(s, q), make_partition(grid)).value;
    const SecondIterateSum A2([N, a](double xi) { return psi_N_profile(xi, N, a); }, grid);
    double low = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 20; ++i) low = std::min(low, A2(-0.5 + 0.05 * i, t, alpha));
    norms.push_back(norm);
    cascade_ok = cascade_ok && low >= threshold;
    rec.rows.push_back(row({std::to_string(N), num(norm), num(low), num(threshold)}));
  }
  rec.measured["norms"] = norms;
  rec.verdict("norm_decreasing", strictly_decreasing(norms));
  rec.verdict("cascade_bounded_below", cascade_ok);
}

void norm_inflation(Params& p, ExperimentRecord& rec) {
  const auto alpha = p.alpha(0.5);
  const double s = p.real("s", -0.5);
  const double lambda = p.real("lambda", 2.0 * kPi);
  const auto lo = p.integer("N_min", 8);
  const auto hi = p.integer("N_max", 16);
  if (lo < 2 || hi < lo + 2 || hi > 24) throw ConfigError("N_min/N_max: need 2 <= N_min, N_min + 2 <= N_max <= 24");
  const auto K = p.integer("K", 12);
  if (K < 3 || K > 40) throw ConfigError("K: must lie in [3, 40]");
  const auto seed = static_cast<std::uint64_t>(p.integer("seed", 0x5EED));
  const double sign = p.real("sign", -1.0);
  const auto budget = p.budget();
  const int substeps = 32;
  rec.params["substeps"] = substeps;

  // Fail fast on the largest grid before any work.
  require_budget(grid_for_band(lambda, std::ldexp(1.0, static_cast<int>(hi) + 3)), budget);

  rec.columns = {"N", "C0", "R", "T_N", "phi_norm", "free_norm", "A2_norm", "tail_measured",
                 "tail_bound", "L", "L_over_log2"};
  std::vector<double> phis, Ls, rates;
  PlotSeries plot{"surrogate", "N L(N) L/(lnN)^2 phi_norm", {}};
  for (auto n = lo; n <= hi; ++n) {
    const int N = static_cast<int>(n);
    const auto cgrid = grid_for_band(lambda, std::ldexp(1.0, N + 2));
    const double C0 = estimate_algebra_constant(cgrid, N, 100, seed);
    const double R = std::pow(static_cast<double>(N), -0.25) * std::log(static_cast<double>(N));
    const double T = 1.0 / (8.0 * C0 * std::ldexp(1.0, N));
    const auto grid = grid_for_band(lambda, std::ldexp(1.0, N + 3));
    const auto phi = build_phi_NR(N, R, grid);

    SolveConfig cfg;
    cfg.alpha = alpha;
    cfg.sign = sign;
    cfg.horizon = T;
    cfg.dt = T;
    cfg.substeps = substeps;
    const auto terms = picard_terms(phi, static_cast<int>(K), cfg);
    const double phi_norm = sobolev_norm(phi, s);
    const double free_norm = sobolev_norm(terms[0].trajectory.back(), s);
    // The recurrence term is half the bilinear operator of the closed form;
    // the expansion u = sum A_k uses the recurrence terms directly.
    const double a2 = sobolev_norm(terms[1].trajectory.back(), s);
    double tail = 0.0;
    for (std::size_t k = 2; k < terms.size(); ++k) tail += sobolev_norm(terms[k].trajectory.back(), s);
    double bound = 0.0;
    for (int k = 3; k <= 60; ++k) bound += tail_bound(k, N, R, T, C0);
    const double L = a2 - free_norm - tail;
    const double rate = L / std::pow(std::log(static_cast<double>(N)), 2);
    phis.push_back(phi_norm);
    Ls.push_back(L);
    rates.push_back(rate);
    plot.rows.push_back({static_cast<double>(N), L, rate, phi_norm});
    rec.rows.push_back(row({std::to_string(N), num(C0), num(R), num(T), num(phi_norm), num(free_norm), num(a2),
                            num(tail), num(bound), num(L), num(rate)}));
  }
  const auto [rmin, rmax] = std::minmax_element(rates.begin(), rates.end());
  const bool bracket = *rmin > 0.0 && *rmax <= 4.0 * *rmin;
  rec.measured["rate_bracket_width"] = *rmin > 0.0 ? *rmax / *rmin : std::numeric_limits<double>::infinity();
  rec.plots.push_back(std::move(plot));
  rec.verdict("phi_norm_decreasing", strictly_decreasing(phis));
  rec.verdict("surrogate_increasing", strictly_increasing(Ls));
  rec.verdict("log_squared_rate", bracket);
}

void phase_diagram(Params& p, ExperimentRecord& rec) {
  PhaseDiagramSettings st;
  st.max_modes = p.budget();
  const auto diagram = compute_phase_diagram(st);
  rec.params["alphas"] = st.alphas;
  rec.params["regularities"] = st.regularities;
  rec.params["threshold"] = st.threshold;

  rec.columns = {"alpha", "s", "critical_s", "slope_cascade", "slope_scaling", "verdict", "expected"};
  PlotSeries grid{"grid", "alpha s verdict(1=well-posed) expected", {}};
  for (const auto& c : diagram.cells) {
    rec.rows.push_back(row({num(c.alpha), num(c.s), num(critical_regularity(c.alpha)), num(c.slope_cascade),
                            num(c.slope_scaling), c.well_posed ? "well-posed" : "ill-posed",
                            c.expected ? "well-posed" : "ill-posed"}));
    grid.rows.push_back({c.alpha, c.s, c.well_posed ? 1.0 : 0.0, c.expected ? 1.0 : 0.0});
  }
  PlotSeries boundary{"boundary", "alpha max(-alpha,1/2-2alpha)", {}};
  for (int i = 1; i <= 100; ++i) {
    const double a = 0.01 * i;
    boundary.rows.push_back({a, critical_regularity(a)});
  }
  rec.plots.push_back(std::move(grid));
  rec.plots.push_back(std::move(boundary));
  rec.measured["mismatches"] = diagram.mismatches;
  rec.verdict("boundary_within_one_cell", diagram.boundary_ok);
  rec.verdict("corner_ill_posed", diagram.corner_fails);
}

using Runner = std::function<void(Params&, ExperimentRecord&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"semigroup-check", semigroup_check},
      {"besov-scaling", besov_scaling},
      {"smoothing-check", smoothing_check},
      {"solve", solve},
      {"wellposed-scaling", wellposed_scaling},
      {"cascade", cascade},
      {"endpoint-cascade", endpoint_cascade},
      {"norm-inflation", norm_inflation},
      {"dilation-check", dilation_check},
      {"phase-diagram", phase_diagram},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

ExperimentRecord run_experiment(const std::string& name, const ExperimentConfig& config) {
  const auto& r = registry();
  auto it = std::find_if(r.begin(), r.end(), [&](const auto& e) { return e.first == name; });
  if (it == r.end()) throw ConfigError("unknown experiment '" + name + "'");
  ExperimentRecord rec;
  rec.experiment = name;
  rec.timestamp = utc_timestamp();
  rec.version = FRACHEAT_VERSION;
  Params params(config, rec);
  try {
    it->second(params, rec);
  } catch (const DomainError& e) {
    throw ConfigError(name + ": " + e.what());
  }
  return rec;
}

}  // namespace fracheat
