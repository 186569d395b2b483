#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracheat/grid.hpp"

namespace fracheat {

/// c_k = (1/M) sum_n samples[n] exp(-i xi_k x_n), x_n = n lambda / M.
SpectralField to_spectral(std::span<const double> samples, const TorusGrid& grid);

/// Inverse of to_spectral. Throws SymmetryError if the field is not real.
std::vector<double> from_spectral(const SpectralField& field);

/// |xi|^{2 alpha}, zero at the origin.
double fractional_symbol(double xi, FractionalOrder alpha) noexcept;

/// Fractional heat semigroup: c_k -> exp(-t |xi_k|^{2 alpha}) c_k.
SpectralField apply_semigroup(const SpectralField& field, double t, FractionalOrder alpha);

/// Multiplier table exp(-t |xi_k|^{2 alpha}) in slot order.
std::vector<double> semigroup_multipliers(const TorusGrid& grid, double t, FractionalOrder alpha);
std::vector<double> symbol_table(const TorusGrid& grid, FractionalOrder alpha);

/// Fourier coefficients of u^2 with the 2/3 rule applied before and after
/// the physical-space product.
SpectralField dealiased_square(const SpectralField& field);
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

/// Zeroes every wavenumber |k| > M/3 in place.
void dealias_truncate(std::span<Complex> coeffs, const TorusGrid& grid) noexcept;

/// Truncated coefficients -> physical samples (real fields only).
std::vector<double> to_physical_truncated(std::span<const Complex> coeffs, const TorusGrid& grid);
/// Physical samples -> truncated coefficients.
std::vector<Complex> from_physical_truncated(std::span<const double> samples, const TorusGrid& grid);

/// Parseval pairing int u g = (1/2pi) int u_hat g_hat, realized as
/// sum_k c_k g_hat(xi_k). `g_hat` must be real and even.
double pair_with_test_function(const SpectralField& field,
                               const std::function<double(double)>& g_hat);

}  // namespace fracheat
