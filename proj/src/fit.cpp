#include "fracheat/fit.hpp"

#include <algorithm>
#include <cmath>

#include "fracheat/errors.hpp"

namespace fracheat {

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw DomainError("exponent fit needs at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pairs) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw DomainError("exponent fit needs positive finite data");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const auto n = static_cast<double>(pairs.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw DomainError("exponent fit needs distinct abscissae");
  ExponentFit fit;
  fit.count = pairs.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [x, y] : pairs) {
    const double model = std::exp(fit.intercept + fit.slope * std::log(x));
    fit.residual = std::max(fit.residual, std::abs(model / y - 1.0));
  }
  return fit;
}

}  // namespace fracheat
