#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fracheat/grid.hpp"
#include "fracheat/trajectory.hpp"

namespace fracheat {

/// Parameters of the mild-solution solver for u = S(t)u0 + sign * L(u^2).
///
/// `sign` is the coefficient of the Duhamel term: -1 for u_t + D u = -u^2,
/// +1 for u_t + D u = +u^2, 0 to switch the nonlinearity off.
struct SolveConfig {
  FractionalOrder alpha{0.75};
  double sign = -1.0;
  double horizon = 1.0;
  double dt = 1.0 / 256.0;
  double picard_tol = 1e-10;
  int max_iter = 50;
  // Indices of the X-norm used for the stopping rule.
  double s = -0.75;
  double q = 2.0;
  std::optional<double> s0;

  // Duhamel sub-stepping inside each output step (Picard series only).
  int substeps = 1;
  bool adaptive = false;
  double adaptive_rtol = 1e-4;

  std::size_t step_count() const;
  void validate() const;
};

/// S(t_n) u0 on the uniform grid t_n = n dt, n = 0..steps.
Trajectory free_evolution(const SpectralField& u0, FractionalOrder alpha, double horizon, double dt);

/// I(t) = int_0^t S(t-t') f(t') dt' by the exponential trapezoid:
/// I_{n+1} = E I_n + dt/2 (E f_n + f_{n+1}), E = exp(-dt |xi|^{2 alpha}).
Trajectory duhamel_integrate(const Trajectory& source, FractionalOrder alpha);

/// Node-wise dealiased square.
Trajectory square_trajectory(const Trajectory& traj);

struct IterationReport {
  bool converged = false;
  bool diverged = false;
  int iterations = 0;
  std::vector<double> difference_norms;
  /// max over m >= 2 of d_m / d_{m-1}; 0 when fewer than two differences.
  double contraction_factor = 0.0;
  std::optional<double> blowup_time;
};

struct SolveResult {
  Trajectory solution;
  IterationReport report;
};

/// Picard iteration u <- S u0 + sign L(u^2) started from the free evolution,
/// stopped when the X^{s,q}_{alpha,T} norm of successive differences drops
/// below picard_tol. Divergence and blow-up are reported, not thrown.
SolveResult fixed_point_solve(const SpectralField& u0, const SolveConfig& config);

/// sup_n || u - S u0 - sign L(u^2) ||_{L2} with the same discrete operators.
double integral_residual(const Trajectory& u, const SpectralField& u0, const SolveConfig& config);

/// max_{t_n > 0} t_n^{(s0-s)/(2 alpha)} ||u(t_n)||_{H^{s0}}.
double weighted_sup_norm(const Trajectory& traj, double s0, double s, FractionalOrder alpha);

/// Single-mode value of ||S(t)f||_{H^{s2}} t^{(s2-s1)/2alpha} / ||f||_{H^{s1}}.
double smoothing_mode_ratio(double xi, double s1, double s2, FractionalOrder alpha, double t);

/// Unit single-mode probes at `count` log-spaced wavenumbers in [1, M/2).
std::vector<SpectralField> smoothing_mode_probes(const TorusGrid& grid, std::size_t count);

/// Empirical constant of the smoothing estimate over a probe family.
double smoothing_constant(double s1, double s2, FractionalOrder alpha, double t,
                          std::span<const SpectralField> probes);

enum class ExistenceRegime { Subcritical, Critical, SobolevHalf };

/// Exponent of the minimal existence time power law.
double existence_time_exponent(ExistenceRegime regime, FractionalOrder alpha, double s);
/// Power law with unit prefactor.
double existence_time_estimate(double u0_norm, FractionalOrder alpha, double s,
                               ExistenceRegime regime);

/// u(t, x) -> scale^{2a} u(scale^{2a} t, scale x), realized on the torus of
/// period lambda/scale with the same coefficient layout.
Trajectory dilation_rescale(const Trajectory& traj, double scale, FractionalOrder alpha);

}  // namespace fracheat
