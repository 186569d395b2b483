#include "fracheat/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracheat/besov.hpp"
#include "fracheat/errors.hpp"

namespace fracheat {

void FamilySpec::validate() const {
  if (N < 1) throw DomainError("family index N must be >= 1");
  if (family == Family::PhiNR && !(R > 0.0)) throw DomainError("phiNR needs R > 0");
  (void)FractionalOrder(alpha);
}

Family parse_family(std::string_view name) {
  if (name == "phiN") return Family::PhiN;
  if (name == "psiN") return Family::PsiN;
  if (name == "phiNR") return Family::PhiNR;
  throw ConfigError("unknown family '" + std::string(name) + "' (expected phiN, psiN or phiNR)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::PhiN: return "phiN";
    case Family::PsiN: return "psiN";
    case Family::PhiNR: return "phiNR";
  }
  return "?";
}

namespace {

double indicator(double x, double lo, double hi) noexcept {
  const double eps = 1e-9 * std::max(1.0, std::abs(hi));
  if (x > lo + eps && x < hi - eps) return 1.0;
  if (std::abs(x - lo) <= eps || std::abs(x - hi) <= eps) return 0.5;
  return 0.0;
}

void require_band(const TorusGrid& grid, double top, const char* what) {
  if (!(top < grid.max_frequency())) {
    throw ResolutionError(std::string(what) + " needs |xi| up to " + std::to_string(top) +
                          " but the grid stops at " + std::to_string(grid.max_frequency()));
  }
}

}  // namespace

double phi_N_profile(double xi, double N, double alpha) noexcept {
  return std::pow(N, alpha) * (indicator(xi, N, N + 2.0) + indicator(-xi, N, N + 2.0));
}

double psi_N_profile(double xi, int N, double alpha) noexcept {
  double v = 0.0;
  for (int j = N; j <= 2 * N; ++j) v += phi_N_profile(xi, std::ldexp(1.0, j), alpha);
  return v / std::sqrt(static_cast<double>(N));
}

double phi_NR_profile(double xi, int N, double R) noexcept {
  return R * DyadicPartition::phi(std::ldexp(xi, -N));
}

SpectralField build_phi_N(double N, FractionalOrder alpha, const TorusGrid& grid) {
  if (!(N >= 1.0)) throw DomainError("phi_N needs N >= 1");
  if (grid.spacing() > 0.25 + 1e-15) {
    throw ResolutionError("phi_N needs lattice spacing <= 1/4 to resolve I_N");
  }
  require_band(grid, N + 2.0, "phi_N");
  const double a = alpha.value();
  return SpectralField::from_transform(grid, [&](double xi) { return phi_N_profile(xi, N, a); });
}

SpectralField build_psi_N(int N, FractionalOrder alpha, const TorusGrid& grid) {
  if (N < 1) throw DomainError("psi_N needs N >= 1");
  if (2 * N > 60) throw ResolutionError("psi_N frequency 2^{2N} is beyond double range");
  require_band(grid, std::ldexp(1.0, 2 * N) + 2.0, "psi_N");
  if (grid.spacing() > 0.25 + 1e-15) {
    throw ResolutionError("psi_N needs lattice spacing <= 1/4");
  }
  const double a = alpha.value();
  return SpectralField::from_transform(grid, [&](double xi) { return psi_N_profile(xi, N, a); });
}

SpectralField build_phi_NR(int N, double R, const TorusGrid& grid) {
  if (N < 1) throw DomainError("phi_{N,R} needs N >= 1");
  if (!(R > 0.0)) throw DomainError("phi_{N,R} needs R > 0");
  require_band(grid, std::ldexp(1.0, N + 2), "phi_{N,R}");
  return SpectralField::from_transform(grid, [&](double xi) { return phi_NR_profile(xi, N, R); });
}

SpectralField build_family(const FamilySpec& spec, const TorusGrid& grid) {
  spec.validate();
  switch (spec.family) {
    case Family::PhiN: return build_phi_N(spec.N, FractionalOrder(spec.alpha), grid);
    case Family::PsiN: return build_psi_N(spec.N, FractionalOrder(spec.alpha), grid);
    case Family::PhiNR: return build_phi_NR(spec.N, spec.R, grid);
  }
  throw DomainError("unknown family");
}

CascadeReport verify_cascade(double N, FractionalOrder alpha, double t, const TorusGrid& grid,
                             double quadrature_tol) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("cascade check needs t in (0, 1)");
  if (grid.spacing() > 0.25 + 1e-15) throw ResolutionError("cascade needs lattice spacing <= 1/4");
  require_band(grid, N + 2.0, "cascade");
  const double a = alpha.value();
  const SecondIterateSum A2([N, a](double xi) { return phi_N_profile(xi, N, a); }, grid);

  CascadeReport report;
  report.threshold = 0.25 * std::exp(-t / 2.0);
  report.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 20; ++i) {
    const double xi = -0.5 + 0.05 * i;
    const double v = A2(xi, t, alpha);
    report.xi.push_back(xi);
    report.values.push_back(v);
    report.min_value = std::min(report.min_value, v);
  }
  report.bound_pass = report.min_value >= report.threshold * (1.0 - quadrature_tol);

  // Opposite-sign pairs: xi1 in I_N, xi - xi1 in -I_N.
  report.theta_min = std::numeric_limits<double>::infinity();
  report.theta_max = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double xi = -0.5 + 0.05 * i;
    for (int m = 0; m <= 40; ++m) {
      const double xi1 = N + 2.0 * m / 40.0;
      const double partner = xi - xi1;
      if (partner < -(N + 2.0) || partner > -N) continue;
      const double th = std::abs(theta(xi, xi1, alpha));
      report.theta_min = std::min(report.theta_min, th);
      report.theta_max = std::max(report.theta_max, th);
    }
  }
  report.bracket_pass = report.theta_min >= std::pow(N, 2.0 * a) &&
                        report.theta_max <= 2.0 * std::pow(N + 2.0, 2.0 * a);
  return report;
}

double pairing_test_profile(double xi) noexcept { return DyadicPartition::eta(4.0 * xi); }

double pairing_lower_bound(double N, FractionalOrder alpha, double t, const TorusGrid& grid) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("pairing needs t in (0, 1)");
  require_band(grid, N + 2.0, "pairing");
  const double a = alpha.value();
  const SecondIterateSum A2([N, a](double xi) { return phi_N_profile(xi, N, a); }, grid);
  const auto top = static_cast<std::ptrdiff_t>(std::floor(0.5 / grid.spacing()));
  double sum = 0.0;
  for (std::ptrdiff_t k = -top; k <= top; ++k) {
    const double xi = grid.spacing() * static_cast<double>(k);
    const double g = pairing_test_profile(xi);
    if (g != 0.0) sum += A2(xi, t, alpha) * g;
  }
  return sum / grid.period();
}

}  // namespace fracheat
