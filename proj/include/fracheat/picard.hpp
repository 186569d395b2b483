#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracheat/evolution.hpp"
#include "fracheat/grid.hpp"
#include "fracheat/trajectory.hpp"

namespace fracheat {

/// Resonance function |xi|^{2a} - |xi1|^{2a} - |xi - xi1|^{2a}.
double theta(double xi, double xi1, FractionalOrder alpha) noexcept;

/// (exp(-[|xi1|^{2a} + |xi-xi1|^{2a}] t) - exp(-|xi|^{2a} t)) / theta, with
/// the removable singularity filled in. Always >= 0.
double duhamel_kernel(double xi, double xi1, double t, FractionalOrder alpha) noexcept;

/// Lattice quadrature of the closed-form second iterate
///   A2_hat(t, xi) = 2 (1/2pi) int phi_hat(xi1) phi_hat(xi - xi1) K(xi, xi1, t) dxi1
/// on the xi1-lattice of `grid`, i.e. (2/lambda) sum_{xi1} ... .
class SecondIterateSum {
 public:
  using Profile = std::function<double(double)>;

  SecondIterateSum(Profile phi_hat, const TorusGrid& grid);

  double operator()(double xi, double t, FractionalOrder alpha) const;
  /// Support size on the lattice.
  std::size_t support_size() const noexcept { return xi1_.size(); }

 private:
  Profile phi_hat_;
  double period_;
  std::vector<double> xi1_;
  std::vector<double> weight_;
};

double second_iterate_hat(const SecondIterateSum::Profile& phi_hat, double t, double xi,
                          FractionalOrder alpha, const TorusGrid& grid);

/// Order-k term of the Picard series of u = S u0 + sign L(u^2), i.e.
/// sign^{k-1} A_k(t, h^k) on the output time grid.
struct PicardTerm {
  int k;
  Trajectory trajectory;
};

/// Diagnostics of the joint march.
struct PicardStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double min_step = 0.0;
};

/// A_1..A_K on the output grid t_n = n config.dt, n = 0..T/dt.
///
/// All orders are marched together with the exponential trapezoid. With
/// config.adaptive off each output step is split into config.substeps equal
/// steps (substeps = 1 reproduces duhamel_integrate exactly); the fixed path
/// requires h * max|xi|^{2a} <= 10 over the dealiased band. With
/// config.adaptive on the substep is controlled by a local error estimate
/// with relative tolerance config.adaptive_rtol.
std::vector<PicardTerm> picard_terms(const SpectralField& seed, int K, const SolveConfig& config,
                                     PicardStats* stats = nullptr);

/// Sum of all terms, node by node.
Trajectory picard_sum(const std::vector<PicardTerm>& terms);

/// Tail bound 8^k C0^{k-1} (N + ln k)^{1/2} R^k 2^{(2k-2)N/2} k t^{k-1}.
double log_tail_bound(int k, int N, double R, double t, double C0);
double tail_bound(int k, int N, double R, double t, double C0);

/// Modulation growth bound 4^k C0^{k-1} t^{k-1} R^k 2^{(2k-1)N/2}.
double log_modulation_growth_bound(int k, int N, double R, double t, double C0);
double modulation_growth_bound(int k, int N, double R, double t, double C0);

/// Largest observed ||uv||_{M_N} / (2^{N/2} ||u||_{M_N} ||v||_{M_N}) over
/// `pairs` random fields with positive even coefficients on |xi| <= 2^{N+1}.
double algebra_ratio(const TorusGrid& grid, int N, int pairs, std::uint64_t seed);

/// Empirical algebra constant: 1.1 * algebra_ratio.
double estimate_algebra_constant(const TorusGrid& grid, int N, int pairs = 100,
                                 std::uint64_t seed = 0x5EED);

}  // namespace fracheat
