#include "fracheat/besov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracheat/errors.hpp"

namespace fracheat {

namespace {

double glue(double x) noexcept { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Visits the (block, weight) pairs with nonzero weight at |xi|.
template <class F>
void for_each_block(double xi, int j_max, F&& visit) {
  const double a = std::abs(xi);
  if (a < 2.0) visit(-1, DyadicPartition::eta(a));
  if (a <= 1.0) return;
  const int top = static_cast<int>(std::floor(std::log2(a)));
  for (int j = std::max(0, top - 1); j <= std::min(top, j_max); ++j) {
    const double w = DyadicPartition::phi(std::ldexp(a, -j));
    if (w > 0.0) visit(j, w);
  }
}

}  // namespace

double DyadicPartition::eta(double xi) noexcept {
  const double a = std::abs(xi);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double up = glue(2.0 - a);
  return up / (up + glue(a - 1.0));
}

double DyadicPartition::phi(double xi) noexcept { return eta(0.5 * xi) - eta(xi); }

double DyadicPartition::weight(int j, double xi) noexcept {
  return j < 0 ? eta(xi) : phi(std::ldexp(xi, -j));
}

DyadicPartition make_partition(const TorusGrid& grid) {
  return DyadicPartition(static_cast<int>(std::floor(std::log2(grid.max_frequency()))));
}

BesovIndex::BesovIndex(double s_, double q_) : s(s_), q(q_) {
  if (!(q_ >= 1.0)) throw DomainError("Besov summability index q must be >= 1");
  if (!std::isfinite(s_)) throw DomainError("Besov regularity s must be finite");
}

std::string NormReport::csv_row(const std::string& kind, double s, double q, double alpha) const {
  std::ostringstream os;
  os.precision(17);
  os << kind << ',' << s << ',' << (std::isinf(q) ? std::string("inf") : std::to_string(q)) << ','
     << alpha << ',' << value;
  for (double b : blocks) os << ',' << b;
  return os.str();
}

double lq_aggregate(const std::vector<double>& values, double q) noexcept {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += std::pow(std::abs(v) / peak, q);
  return peak * std::pow(sum, 1.0 / q);
}

SpectralField lp_block(const SpectralField& u, int j, const DyadicPartition& partition) {
  if (j < -1) throw DomainError("block index must be >= -1");
  if (j > partition.j_max()) {
    throw ResolutionError("block " + std::to_string(j) + " exceeds resolvable index " +
                          std::to_string(partition.j_max()));
  }
  const auto& grid = u.grid();
  std::vector<Complex> c(u.coeffs().begin(), u.coeffs().end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] *= DyadicPartition::weight(j, grid.frequency(i));
  }
  return SpectralField(grid, std::move(c), u.is_real());
}

std::vector<double> block_l2_norms(const SpectralField& u, const DyadicPartition& partition) {
  const auto& grid = u.grid();
  std::vector<double> energy(static_cast<std::size_t>(partition.block_count()), 0.0);
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    const double e = std::norm(u[i]);
    if (e == 0.0) continue;
    for_each_block(grid.frequency(i), partition.j_max(), [&](int j, double w) {
      energy[static_cast<std::size_t>(j + 1)] += w * w * e;
    });
  }
  for (auto& e : energy) e = std::sqrt(grid.period() * e);
  return energy;
}

NormReport besov_norm(const SpectralField& u, BesovIndex idx, const DyadicPartition& partition) {
  NormReport report;
  report.blocks = block_l2_norms(u, partition);
  for (std::size_t b = 0; b < report.blocks.size(); ++b) {
    const int j = static_cast<int>(b) - 1;
    report.blocks[b] *= std::exp2(idx.s * j);
  }
  report.value = lq_aggregate(report.blocks, idx.q);
  return report;
}

double sobolev_norm(const SpectralField& u, double s) {
  const auto& grid = u.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    const double e = std::norm(u[i]);
    if (e == 0.0) continue;
    const double xi = grid.frequency(i);
    sum += std::pow(1.0 + xi * xi, s) * e;
  }
  return std::sqrt(grid.period() * sum);
}

double spacetime_besov_norm(const Trajectory& traj, TimeNorm p, BesovIndex idx,
                            const DyadicPartition& partition) {
  if (traj.empty()) throw DomainError("space-time norm of an empty trajectory");
  const std::size_t nodes = traj.size();
  const auto blocks = static_cast<std::size_t>(partition.block_count());
  std::vector<double> time_norm(blocks, 0.0);
  for (std::size_t n = 0; n < nodes; ++n) {
    const auto b = block_l2_norms(traj[n], partition);
    const double w = (n == 0 || n + 1 == nodes) ? 0.5 : 1.0;
    for (std::size_t k = 0; k < blocks; ++k) {
      switch (p) {
        case TimeNorm::Sup:
          time_norm[k] = std::max(time_norm[k], b[k]);
          break;
        case TimeNorm::L1:
          time_norm[k] += w * traj.dt() * b[k];
          break;
        case TimeNorm::L2:
          time_norm[k] += w * traj.dt() * b[k] * b[k];
          break;
      }
    }
  }
  if (nodes == 1 && p != TimeNorm::Sup) std::fill(time_norm.begin(), time_norm.end(), 0.0);
  for (std::size_t k = 0; k < blocks; ++k) {
    if (p == TimeNorm::L2) time_norm[k] = std::sqrt(time_norm[k]);
    time_norm[k] *= std::exp2(idx.s * (static_cast<double>(k) - 1.0));
  }
  return lq_aggregate(time_norm, idx.q);
}

double x_norm(const Trajectory& traj, double s, double q, FractionalOrder alpha,
              const DyadicPartition& partition) {
  return spacetime_besov_norm(traj, TimeNorm::Sup, BesovIndex(s, q), partition) +
         spacetime_besov_norm(traj, TimeNorm::L2, BesovIndex(s + alpha.value(), q), partition);
}

double modulation_norm(const SpectralField& u, int N) {
  const auto& grid = u.grid();
  const double width = std::ldexp(1.0, N);
  if (width < grid.spacing()) {
    throw ResolutionError("modulation window 2^N is finer than the grid spacing");
  }
  if (width > grid.spacing() * static_cast<double>(grid.modes())) {
    throw ResolutionError("modulation window is coarser than the full grid band");
  }
  const auto lo = static_cast<long long>(std::floor(-grid.max_frequency() / width));
  const auto hi = static_cast<long long>(std::floor(grid.max_frequency() / width));
  std::vector<double> mass(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    const double e = std::norm(u[i]);
    if (e == 0.0) continue;
    const auto m = static_cast<long long>(std::floor(grid.frequency(i) / width));
    mass[static_cast<std::size_t>(m - lo)] += e;
  }
  double total = 0.0;
  const double scale = 2.0 * std::numbers::pi * grid.period();
  for (double e : mass) total += std::sqrt(scale * e);
  return total;
}

}  // namespace fracheat
