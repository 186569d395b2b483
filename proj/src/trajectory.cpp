#include "fracheat/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "fracheat/errors.hpp"

namespace fracheat {

Trajectory::Trajectory(TorusGrid grid, double dt, std::vector<SpectralField> fields)
    : grid_(grid), dt_(dt), fields_(std::move(fields)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("trajectory time step must be positive");
  for (const auto& f : fields_) {
    if (!(f.grid() == grid_)) throw DimensionError("trajectory fields must share one grid");
  }
}

Trajectory Trajectory::scaled(double factor) const {
  std::vector<SpectralField> out;
  out.reserve(fields_.size());
  for (const auto& f : fields_) out.push_back(f.scaled(factor));
  return Trajectory(grid_, dt_, std::move(out));
}

namespace {

void require_compatible(const Trajectory& a, const Trajectory& b) {
  if (!(a.grid() == b.grid()) || a.size() != b.size() ||
      std::abs(a.dt() - b.dt()) > 1e-12 * a.dt()) {
    throw DimensionError("trajectories have incompatible grids or time steps");
  }
}

}  // namespace

Trajectory operator+(const Trajectory& a, const Trajectory& b) {
  require_compatible(a, b);
  std::vector<SpectralField> out;
  out.reserve(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) out.push_back(a[n] + b[n]);
  return Trajectory(a.grid_, a.dt_, std::move(out));
}

Trajectory operator-(const Trajectory& a, const Trajectory& b) {
  require_compatible(a, b);
  std::vector<SpectralField> out;
  out.reserve(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) out.push_back(a[n] - b[n]);
  return Trajectory(a.grid_, a.dt_, std::move(out));
}

double sup_l2(const Trajectory& traj) noexcept {
  double m = 0.0;
  for (const auto& f : traj.fields()) m = std::max(m, f.l2_norm());
  return m;
}

}  // namespace fracheat
