#pragma once

#include <cstddef>
#include <vector>

namespace fracheat {

/// Well-posedness threshold max(-alpha, 1/2 - 2 alpha).
double critical_regularity(double alpha) noexcept;

/// Verdict of the growth test in one (alpha, s) cell.
///
/// The quadratic Picard term must be bounded by the square of the datum in
/// H^s for the contraction argument to close. Two probe families test this:
/// the high-to-low cascade phi_N (ratio ~ N^{-2(alpha+s)}) and the
/// scale-critical bump phi_{N,1} observed up to t = 2^{-2 alpha N} (ratio ~
/// 2^{N(1/2 - 2 alpha - s)}). A cell is well posed when neither ratio grows,
/// i.e. both log-log slopes stay below `threshold`.
struct PhaseCell {
  double alpha = 0.0;
  double s = 0.0;
  double slope_cascade = 0.0;
  double slope_scaling = 0.0;
  bool well_posed = false;
  bool expected = false;
};

struct PhaseDiagramSettings {
  std::vector<double> alphas{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<double> regularities{-1.25, -1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5};
  int cascade_log2_min = 6;
  int cascade_log2_max = 12;
  double cascade_time = 0.5;
  int scale_min = 6;
  int scale_max = 12;
  int time_steps = 64;
  double threshold = 0.04;
  std::size_t max_modes = std::size_t{1} << 22;
};

struct PhaseDiagram {
  std::vector<PhaseCell> cells;
  /// Every misclassified cell lies within one s-step of the threshold.
  bool boundary_ok = false;
  /// The (1/2, -1/2) cell, when on the grid, is classified ill posed.
  bool corner_fails = false;
  std::size_t mismatches = 0;
};

PhaseDiagram compute_phase_diagram(const PhaseDiagramSettings& settings);

}  // namespace fracheat
