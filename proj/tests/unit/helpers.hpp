#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fracheat/grid.hpp"

namespace fracheat::test {

// Real field with seeded Gaussian coefficients on |k| <= band.
inline SpectralField random_field(const TorusGrid& grid, std::ptrdiff_t band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> c(grid.modes());
  c[0] = g(rng);
  for (std::ptrdiff_t k = 1; k <= band; ++k) {
    const Complex v(g(rng), g(rng));
    c[grid.slot(k)] = v;
    c[grid.slot(-k)] = std::conj(v);
  }
  return SpectralField(grid, std::move(c), true);
}

inline SpectralField single_mode(const TorusGrid& grid, std::ptrdiff_t k, double amplitude) {
  std::vector<Complex> c(grid.modes());
  c[grid.slot(k)] += amplitude;
  if (k != 0) c[grid.slot(-k)] += amplitude;
  return SpectralField(grid, std::move(c), true);
}

inline double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fracheat::test
