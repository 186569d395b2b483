#include "fracheat/spectral.hpp"

#include <cmath>
#include <string>

#include "fracheat/detail/fft.hpp"
#include "fracheat/errors.hpp"

namespace fracheat {

SpectralField to_spectral(std::span<const double> samples, const TorusGrid& grid) {
  if (samples.size() != grid.modes()) {
    throw DimensionError("sample count " + std::to_string(samples.size()) +
                         " does not match grid modes " + std::to_string(grid.modes()));
  }
  std::vector<Complex> c(grid.modes());
  detail::forward_real(samples, c);
  return SpectralField(grid, std::move(c), true);
}

std::vector<double> from_spectral(const SpectralField& field) {
  if (!field.is_real()) throw SymmetryError("from_spectral requires a real field");
  const auto& grid = field.grid();
  // Re-check here: the complex inverse exposes the imaginary residue.
  std::vector<Complex> full(grid.modes());
  detail::inverse_complex(field.coeffs(), full);
  double peak = 0.0;
  double residue = 0.0;
  for (const auto& v : full) {
    peak = std::max(peak, std::abs(v));
    residue = std::max(residue, std::abs(v.imag()));
  }
  if (peak > 0.0 && residue > 1e-12 * peak) {
    throw SymmetryError("inverse transform has imaginary residue " + std::to_string(residue / peak));
  }
  std::vector<double> samples(grid.modes());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = full[i].real();
  return samples;
}

double fractional_symbol(double xi, FractionalOrder alpha) noexcept {
  const double a = std::abs(xi);
  if (a == 0.0) return 0.0;
  return std::pow(a, 2.0 * alpha.value());
}

std::vector<double> symbol_table(const TorusGrid& grid, FractionalOrder alpha) {
  std::vector<double> table(grid.modes());
  for (std::size_t i = 0; i < table.size(); ++i) {
    table[i] = fractional_symbol(grid.frequency(i), alpha);
  }
  return table;
}

std::vector<double> semigroup_multipliers(const TorusGrid& grid, double t, FractionalOrder alpha) {
  if (!(t >= 0.0)) throw DomainError("semigroup time must be nonnegative");
  std::vector<double> m(grid.modes());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::exp(-t * fractional_symbol(grid.frequency(i), alpha));
  }
  return m;
}

SpectralField apply_semigroup(const SpectralField& field, double t, FractionalOrder alpha) {
  if (!(t >= 0.0)) {
    throw DomainError("semigroup time must be nonnegative (backward heat flow is excluded)");
  }
  const auto mult = semigroup_multipliers(field.grid(), t, alpha);
  std::vector<Complex> c(field.coeffs().begin(), field.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= mult[i];
  return SpectralField(field.grid(), std::move(c), field.is_real());
}

void dealias_truncate(std::span<Complex> coeffs, const TorusGrid& grid) noexcept {
  const auto cutoff = grid.dealias_cutoff();
  const std::size_t m = grid.modes();
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = grid.wavenumber(i);
    if (k > cutoff || k < -cutoff) coeffs[i] = 0.0;
  }
}

std::vector<double> to_physical_truncated(std::span<const Complex> coeffs, const TorusGrid& grid) {
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  dealias_truncate(c, grid);
  std::vector<double> samples(grid.modes());
  detail::inverse_real(c, samples);
  return samples;
}

std::vector<Complex> from_physical_truncated(std::span<const double> samples, const TorusGrid& grid) {
  std::vector<Complex> c(grid.modes());
  detail::forward_real(samples, c);
  dealias_truncate(c, grid);
  return c;
}

SpectralField dealiased_square(const SpectralField& field) {
  if (!field.is_real()) throw SymmetryError("dealiased_square requires a real field");
  auto u = to_physical_truncated(field.coeffs(), field.grid());
  for (auto& v : u) v *= v;
  return SpectralField(field.grid(), from_physical_truncated(u, field.grid()), true);
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
  if (!a.is_real() || !b.is_real()) throw SymmetryError("dealiased_product requires real fields");
  if (!(a.grid() == b.grid())) throw DimensionError("fields live on different grids");
  auto u = to_physical_truncated(a.coeffs(), a.grid());
  const auto v = to_physical_truncated(b.coeffs(), b.grid());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= v[i];
  return SpectralField(a.grid(), from_physical_truncated(u, a.grid()), true);
}

double pair_with_test_function(const SpectralField& field,
                               const std::function<double(double)>& g_hat) {
  const auto& grid = field.grid();
  Complex sum = 0.0;
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    const Complex c = field[i];
    if (c == Complex{}) continue;
    sum += c * g_hat(grid.frequency(i));
  }
  return sum.real();
}

}  // namespace fracheat
