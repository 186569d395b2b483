#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fracheat/grid.hpp"
#include "fracheat/picard.hpp"

namespace fracheat {

enum class Family { PhiN, PsiN, PhiNR };

struct FamilySpec {
  Family family = Family::PhiN;
  int N = 1;
  double alpha = 0.75;
  double R = 1.0;

  void validate() const;
};

/// "phiN", "psiN" or "phiNR".
Family parse_family(std::string_view name);
std::string family_name(Family f);

/// N^a (chi_I(xi) + chi_I(-xi)), I = [N, N+2]; lattice points on the
/// interval ends get the value 1/2.
double phi_N_profile(double xi, double N, double alpha) noexcept;

/// N^{-1/2} sum_{N <= j <= 2N} phi_N_profile(xi, 2^j, alpha).
double psi_N_profile(double xi, int N, double alpha) noexcept;

/// R phi(2^-N xi), supported in 2^N <= |xi| <= 2^{N+2}.
double phi_NR_profile(double xi, int N, double R) noexcept;

SpectralField build_phi_N(double N, FractionalOrder alpha, const TorusGrid& grid);
/// N^{-1/2} sum_{N <= j <= 2N} phi_{2^j}.
SpectralField build_psi_N(int N, FractionalOrder alpha, const TorusGrid& grid);
SpectralField build_phi_NR(int N, double R, const TorusGrid& grid);
SpectralField build_family(const FamilySpec& spec, const TorusGrid& grid);

struct CascadeReport {
  std::vector<double> xi;
  std::vector<double> values;
  double min_value = 0.0;
  double threshold = 0.0;
  bool bound_pass = false;
  double theta_min = 0.0;
  double theta_max = 0.0;
  bool bracket_pass = false;
  bool pass() const noexcept { return bound_pass && bracket_pass; }
};

/// Closed-form A2 on a 21-point scan of [-1/2, 1/2] against (1/4)e^{-t/2},
/// plus the resonance bracket N^{2a} <= |theta| <= 2(N+2)^{2a} on sampled
/// opposite-sign pairs. `quadrature_tol` is the relative slack granted to
/// the lattice sum.
CascadeReport verify_cascade(double N, FractionalOrder alpha, double t, const TorusGrid& grid,
                             double quadrature_tol = 1e-3);

/// Test bump g_hat(xi) = eta(4 xi): 1 on |xi| <= 1/4, 0 for |xi| >= 1/2.
double pairing_test_profile(double xi) noexcept;

/// int A2(t, phi_N, phi_N) g dx in the discrete pairing normalization.
double pairing_lower_bound(double N, FractionalOrder alpha, double t, const TorusGrid& grid);

}  // namespace fracheat
