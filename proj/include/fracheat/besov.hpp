#pragma once

#include <limits>
#include <string>
#include <vector>

#include "fracheat/grid.hpp"
#include "fracheat/trajectory.hpp"

namespace fracheat {

/// Smooth Littlewood-Paley partition.
///
/// eta is 1 on [-1,1], 0 outside (-2,2), and on 1 < |xi| < 2 equals
/// g(2-|xi|) / (g(2-|xi|) + g(|xi|-1)) with g(x) = exp(-1/x). Then
/// phi(xi) = eta(xi/2) - eta(xi) is supported in 1 <= |xi| <= 4 with
/// phi(2) = 1, and block j >= 0 uses phi(2^-j xi), block -1 uses eta.
class DyadicPartition {
 public:
  explicit DyadicPartition(int j_max) : j_max_(j_max) {}

  static double eta(double xi) noexcept;
  static double phi(double xi) noexcept;
  /// Multiplier of block j (j >= -1) at frequency xi.
  static double weight(int j, double xi) noexcept;

  int j_max() const noexcept { return j_max_; }
  int block_count() const noexcept { return j_max_ + 2; }

 private:
  int j_max_;
};

DyadicPartition make_partition(const TorusGrid& grid);

struct BesovIndex {
  double s;
  double q;  // in [1, inf]
  BesovIndex(double s_, double q_);
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Norm value together with the weighted block magnitudes 2^{js}||Delta_j u||,
/// blocks[0] holding j = -1.
struct NormReport {
  double value = 0.0;
  std::vector<double> blocks;

  /// CSV row: norm_kind,s,q,alpha,value,block_values...
  std::string csv_row(const std::string& kind, double s, double q, double alpha) const;
};

/// l^q aggregation (q = inf gives the max).
double lq_aggregate(const std::vector<double>& values, double q) noexcept;

SpectralField lp_block(const SpectralField& u, int j, const DyadicPartition& partition);

/// ||Delta_j u||_{L2} for j = -1..j_max (index j+1).
std::vector<double> block_l2_norms(const SpectralField& u, const DyadicPartition& partition);

NormReport besov_norm(const SpectralField& u, BesovIndex idx, const DyadicPartition& partition);

/// (lambda * sum_k (1+xi_k^2)^s |c_k|^2)^{1/2}, the Riemann sum of
/// ((1/2pi) int (1+xi^2)^s |u_hat|^2)^{1/2}.
double sobolev_norm(const SpectralField& u, double s);

enum class TimeNorm { L1, L2, Sup };

double spacetime_besov_norm(const Trajectory& traj, TimeNorm p, BesovIndex idx,
                            const DyadicPartition& partition);

/// tilde L^inf_T B^{s,q} + tilde L^2_T B^{s+alpha,q}.
double x_norm(const Trajectory& traj, double s, double q, FractionalOrder alpha,
              const DyadicPartition& partition);

/// Sum over windows [m 2^N, (m+1) 2^N) of ||u_hat||_{L2(window)}, with the
/// window mass (2 pi lambda sum_{window} |c_k|^2)^{1/2}.
double modulation_norm(const SpectralField& u, int N);

}  // namespace fracheat
