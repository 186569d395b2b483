#include "fracheat/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fracheat/errors.hpp"

namespace fracheat {

TorusGrid::TorusGrid(double period, std::size_t modes) : period_(period), modes_(modes) {
  if (!(period >= 1.0) || !std::isfinite(period)) {
    throw DomainError("torus period must be finite and >= 1, got " + std::to_string(period));
  }
  if (modes < 2 || !std::has_single_bit(modes)) {
    throw DomainError("mode count must be a power of two >= 2, got " + std::to_string(modes));
  }
}

TorusGrid grid_for_band(double period, double band) {
  const double spacing = 2.0 * std::numbers::pi / period;
  const auto needed = static_cast<std::size_t>(std::ceil(3.0 * band / spacing)) + 3;
  return TorusGrid(period, std::bit_ceil(std::max<std::size_t>(needed, 8)));
}

TorusGrid grid_for_extent(double period, double extent) {
  const double spacing = 2.0 * std::numbers::pi / period;
  const auto needed = static_cast<std::size_t>(std::floor(2.0 * extent / spacing)) + 2;
  return TorusGrid(period, std::bit_ceil(std::max<std::size_t>(needed, 8)));
}

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
  }
}

double hermitian_defect(const TorusGrid& grid, std::span<const Complex> coeffs) noexcept {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  const std::size_t m = grid.modes();
  double defect = std::abs(coeffs[0].imag());
  defect = std::max(defect, std::abs(coeffs[m / 2].imag()));
  for (std::size_t i = 1; i < m / 2; ++i) {
    defect = std::max(defect, std::abs(coeffs[i] - std::conj(coeffs[m - i])));
  }
  return defect / scale;
}

SpectralField::SpectralField(TorusGrid grid, std::vector<Complex> coeffs, bool is_real)
    : grid_(grid), coeffs_(std::move(coeffs)), is_real_(is_real) {
  if (coeffs_.size() != grid_.modes()) {
    throw DimensionError("coefficient count " + std::to_string(coeffs_.size()) +
                         " does not match grid modes " + std::to_string(grid_.modes()));
  }
  for (const auto& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("spectral field has non-finite coefficients");
    }
  }
  if (is_real_) {
    const double defect = hermitian_defect(grid_, coeffs_);
    if (defect > 1e-12) {
      throw SymmetryError("field flagged real violates Hermitian symmetry (defect " +
                          std::to_string(defect) + ")");
    }
  }
}

SpectralField SpectralField::zeros(const TorusGrid& grid, bool is_real) {
  return SpectralField(grid, std::vector<Complex>(grid.modes()), is_real);
}

double SpectralField::l2_norm() const noexcept {
  double sum = 0.0;
  for (const auto& c : coeffs_) sum += std::norm(c);
  return std::sqrt(grid_.period() * sum);
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

SpectralField SpectralField::scaled(double factor) const {
  std::vector<Complex> c(coeffs_);
  for (auto& v : c) v *= factor;
  return SpectralField(grid_, std::move(c), is_real_);
}

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw DimensionError("fields live on different grids");
}

}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  std::vector<Complex> c(a.coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
  return SpectralField(a.grid_, std::move(c), a.is_real_ && b.is_real_);
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  std::vector<Complex> c(a.coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
  return SpectralField(a.grid_, std::move(c), a.is_real_ && b.is_real_);
}

}  // namespace fracheat
