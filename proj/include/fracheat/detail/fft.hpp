#pragma once

#include <complex>
#include <span>

namespace fracheat::detail {

// Thin wrappers over cached FFTW plans. Forward transforms are scaled by
// 1/M so that out[k] = (1/M) sum_n in[n] exp(-2 pi i k n / M); inverse
// transforms are unscaled. Full-length spectra are in FFT order.

void forward_real(std::span<const double> in, std::span<std::complex<double>> out);
/// `in` must be Hermitian-symmetric; only slots 0..M/2 are read.
void inverse_real(std::span<const std::complex<double>> in, std::span<double> out);
void forward_complex(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out);
void inverse_complex(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out);

}  // namespace fracheat::detail
