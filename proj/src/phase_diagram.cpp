#include "fracheat/phase_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracheat/besov.hpp"
#include "fracheat/counterexamples.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/fit.hpp"
#include "fracheat/picard.hpp"

namespace fracheat {

double critical_regularity(double alpha) noexcept { return std::max(-alpha, 0.5 - 2.0 * alpha); }

namespace {

void check_budget(const TorusGrid& grid, std::size_t max_modes) {
  if (grid.modes() > max_modes) {
    throw BudgetError("phase diagram grid needs " + std::to_string(grid.modes()) +
                      " modes, budget is " + std::to_string(max_modes));
  }
}

// Closed-form A2(t, phi_N, phi_N) on the lattice points of its support.
SpectralField cascade_second_iterate(double N, FractionalOrder alpha, double t, const TorusGrid& grid) {
  const double a = alpha.value();
  const SecondIterateSum A2([N, a](double xi) { return phi_N_profile(xi, N, a); }, grid);
  std::vector<Complex> c(grid.modes());
  const double h = grid.spacing();
  auto fill = [&](std::ptrdiff_t k) {
    if (!grid.represents(k) || !grid.represents(-k)) return;
    const double v = A2(h * static_cast<double>(k), t, alpha) / grid.period();
    c[grid.slot(k)] = v;
    c[grid.slot(-k)] = v;
  };
  const auto low = static_cast<std::ptrdiff_t>(std::ceil(2.0 / h));
  for (std::ptrdiff_t k = 0; k <= low; ++k) fill(k);
  const auto lo = static_cast<std::ptrdiff_t>(std::floor((2.0 * N - 1.0) / h));
  const auto hi = static_cast<std::ptrdiff_t>(std::ceil((2.0 * N + 5.0) / h));
  for (std::ptrdiff_t k = lo; k <= hi; ++k) fill(k);
  return SpectralField(grid, std::move(c), true);
}

}  // namespace

PhaseDiagram compute_phase_diagram(const PhaseDiagramSettings& st) {
  if (st.alphas.empty() || st.regularities.size() < 2) throw DomainError("phase grid too small");
  if (st.cascade_log2_max - st.cascade_log2_min < 2 || st.scale_max - st.scale_min < 2) {
    throw DomainError("phase diagram fits need at least 3 scales");
  }
  const std::size_t ns = st.regularities.size();
  PhaseDiagram out;
  for (double a : st.alphas) {
    const FractionalOrder alpha(a);
    std::vector<std::vector<std::pair<double, double>>> cascade(ns), scaling(ns);

    for (int j = st.cascade_log2_min; j <= st.cascade_log2_max; ++j) {
      const double N = std::ldexp(1.0, j);
      const TorusGrid grid = grid_for_extent(8.0 * std::numbers::pi, 2.0 * N + 8.0);
      check_budget(grid, st.max_modes);
      const auto seed = build_phi_N(N, alpha, grid);
      const auto A2 = cascade_second_iterate(N, alpha, st.cascade_time, grid);
      for (std::size_t i = 0; i < ns; ++i) {
        const double d = sobolev_norm(seed, st.regularities[i]);
        cascade[i].emplace_back(N, sobolev_norm(A2, st.regularities[i]) / (d * d));
      }
    }

    for (int N = st.scale_min; N <= st.scale_max; ++N) {
      const TorusGrid grid = grid_for_band(2.0 * std::numbers::pi, std::ldexp(1.0, N + 3));
      check_budget(grid, st.max_modes);
      const auto seed = build_phi_NR(N, 1.0, grid);
      SolveConfig cfg;
      cfg.alpha = alpha;
      cfg.sign = 1.0;
      cfg.horizon = std::exp2(-2.0 * a * N);
      cfg.dt = cfg.horizon / st.time_steps;
      const auto terms = picard_terms(seed, 2, cfg);
      for (std::size_t i = 0; i < ns; ++i) {
        const double s = st.regularities[i];
        const double d = sobolev_norm(seed, s);
        double best = 0.0;
        for (const auto& f : terms[1].trajectory.fields()) best = std::max(best, sobolev_norm(f, s));
        scaling[i].emplace_back(std::ldexp(1.0, N), best / (d * d));
      }
    }

    for (std::size_t i = 0; i < ns; ++i) {
      PhaseCell cell;
      cell.alpha = a;
      cell.s = st.regularities[i];
      cell.slope_cascade = fit_exponent(cascade[i]).slope;
      cell.slope_scaling = fit_exponent(scaling[i]).slope;
      cell.well_posed = cell.slope_cascade <= st.threshold && cell.slope_scaling <= st.threshold;
      const bool corner = std::abs(a - 0.5) < 1e-12 && std::abs(cell.s + 0.5) < 1e-12;
      cell.expected = cell.s >= critical_regularity(a) - 1e-12 && !corner;
      out.cells.push_back(cell);
    }
  }

  double step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ns; ++i) {
    step = std::min(step, std::abs(st.regularities[i] - st.regularities[i - 1]));
  }
  out.boundary_ok = true;
  out.corner_fails = true;
  for (const auto& c : out.cells) {
    if (c.well_posed != c.expected) {
      ++out.mismatches;
      if (std::abs(c.s - critical_regularity(c.alpha)) > step + 1e-12) out.boundary_ok = false;
    }
    if (std::abs(c.alpha - 0.5) < 1e-12 && std::abs(c.s + 0.5) < 1e-12 && c.well_posed) {
      out.corner_fails = false;
    }
  }
  return out;
}

}  // namespace fracheat
