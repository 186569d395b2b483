#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace fracheat {

using Complex = std::complex<double>;

/// Torus of period lambda carrying M Fourier modes k = -M/2 .. M/2-1.
///
/// Coefficients are stored in FFT order: slot i holds wavenumber i for
/// i < M/2 and i - M otherwise. The frequency of slot i is 2*pi*k/lambda.
/// A function f on the line with compactly supported transform is
/// represented by c_k = f_hat(xi_k) / lambda.
class TorusGrid {
 public:
  TorusGrid(double period, std::size_t modes);

  double period() const noexcept { return period_; }
  std::size_t modes() const noexcept { return modes_; }
  double spacing() const noexcept { return 2.0 * std::numbers::pi / period_; }

  std::ptrdiff_t wavenumber(std::size_t slot) const noexcept {
    const auto i = static_cast<std::ptrdiff_t>(slot);
    const auto m = static_cast<std::ptrdiff_t>(modes_);
    return i < m / 2 ? i : i - m;
  }
  /// Slot of wavenumber k; k must lie in [-M/2, M/2).
  std::size_t slot(std::ptrdiff_t k) const noexcept {
    const auto m = static_cast<std::ptrdiff_t>(modes_);
    return static_cast<std::size_t>(k >= 0 ? k : k + m);
  }
  bool represents(std::ptrdiff_t k) const noexcept {
    const auto m = static_cast<std::ptrdiff_t>(modes_);
    return k >= -m / 2 && k < m / 2;
  }
  double frequency(std::size_t slot) const noexcept {
    return spacing() * static_cast<double>(wavenumber(slot));
  }
  /// |xi| of the Nyquist mode, the largest magnitude on the grid.
  double max_frequency() const noexcept {
    return spacing() * static_cast<double>(modes_ / 2);
  }
  /// Largest wavenumber kept by the 2/3 dealiasing rule.
  std::ptrdiff_t dealias_cutoff() const noexcept {
    return static_cast<std::ptrdiff_t>(modes_ / 3);
  }
  double node(std::size_t n) const noexcept {
    return period_ * static_cast<double>(n) / static_cast<double>(modes_);
  }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  double period_;
  std::size_t modes_;
};

/// Smallest power-of-two grid with spacing 2*pi/period whose 2/3-band
/// reaches `band` (|xi| <= band kept by dealiased products).
TorusGrid grid_for_band(double period, double band);

/// Smallest power-of-two grid (>= 8 modes) whose lattice represents every
/// |xi| <= extent.
TorusGrid grid_for_extent(double period, double extent);

class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);
  double value() const noexcept { return alpha_; }
  friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;

 private:
  double alpha_;
};

/// Fourier coefficients of a field on a TorusGrid.
///
/// Values are immutable after construction. When `is_real` is set the
/// coefficients are checked for Hermitian symmetry (relative 1e-12).
class SpectralField {
 public:
  SpectralField(TorusGrid grid, std::vector<Complex> coeffs, bool is_real = true);

  static SpectralField zeros(const TorusGrid& grid, bool is_real = true);
  /// Builds c_k = f_hat(xi_k) / lambda from a real, even transform profile.
  template <class F>
  static SpectralField from_transform(const TorusGrid& grid, F&& f_hat) {
    std::vector<Complex> c(grid.modes());
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = f_hat(grid.frequency(i)) / grid.period();
    }
    return SpectralField(grid, std::move(c), true);
  }

  const TorusGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  bool is_real() const noexcept { return is_real_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const Complex& operator[](std::size_t slot) const noexcept { return coeffs_[slot]; }

  /// Coefficient of wavenumber k (zero when k is not represented).
  Complex at_wavenumber(std::ptrdiff_t k) const noexcept {
    return grid_.represents(k) ? coeffs_[grid_.slot(k)] : Complex{};
  }

  /// sqrt(lambda * sum |c_k|^2), the L2 norm over one period.
  double l2_norm() const noexcept;
  double max_abs() const noexcept;

  SpectralField scaled(double factor) const;
  std::vector<Complex> release() && { return std::move(coeffs_); }

  friend SpectralField operator+(const SpectralField& a, const SpectralField& b);
  friend SpectralField operator-(const SpectralField& a, const SpectralField& b);

 private:
  TorusGrid grid_;
  std::vector<Complex> coeffs_;
  bool is_real_;
};

/// Checks Hermitian symmetry; returns the max relative defect.
double hermitian_defect(const TorusGrid& grid, std::span<const Complex> coeffs) noexcept;

}  // namespace fracheat
