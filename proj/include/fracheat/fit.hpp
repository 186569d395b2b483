#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fracheat {

/// Least-squares line through (log x, log y).
struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// max_i |exp(intercept) x_i^slope / y_i - 1|.
  double residual = 0.0;
  std::size_t count = 0;

  bool flagged() const noexcept { return residual > 0.2; }
};

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& pairs);

}  // namespace fracheat
