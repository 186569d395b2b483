#pragma once

#include <vector>

#include "fracheat/grid.hpp"

namespace fracheat {

/// Fields on a uniform time grid t_n = n * dt, n = 0..size()-1.
class Trajectory {
 public:
  Trajectory(TorusGrid grid, double dt, std::vector<SpectralField> fields);

  const TorusGrid& grid() const noexcept { return grid_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return fields_.size(); }
  bool empty() const noexcept { return fields_.empty(); }
  double time(std::size_t n) const noexcept { return dt_ * static_cast<double>(n); }
  double horizon() const noexcept { return fields_.empty() ? 0.0 : time(fields_.size() - 1); }

  const SpectralField& operator[](std::size_t n) const noexcept { return fields_[n]; }
  const SpectralField& back() const noexcept { return fields_.back(); }
  const std::vector<SpectralField>& fields() const noexcept { return fields_; }

  Trajectory scaled(double factor) const;
  friend Trajectory operator+(const Trajectory& a, const Trajectory& b);
  friend Trajectory operator-(const Trajectory& a, const Trajectory& b);

 private:
  TorusGrid grid_;
  double dt_;
  std::vector<SpectralField> fields_;
};

/// sup_n ||u(t_n)||_{L2}.
double sup_l2(const Trajectory& traj) noexcept;

}  // namespace fracheat
