#pragma once

#include <filesystem>
#include <iosfwd>

#include "fracheat/trajectory.hpp"

namespace fracheat {

enum class DumpFormat { Binary, Text };

/// Field dump layout.
///
/// Binary: magic "FHTRAJ1\n", then lambda (f64), M (u64), dt (f64), n (u64),
/// then n*M coefficient pairs (re, im) as little-endian f64, node by node.
/// Text: a header line "lambda M dt n" followed by one "re im" line per
/// coefficient, node by node. Fields are reloaded as real when Hermitian.
void write_trajectory(std::ostream& os, const Trajectory& traj, DumpFormat format);
Trajectory read_trajectory(std::istream& is, DumpFormat format);

void save_trajectory(const std::filesystem::path& path, const Trajectory& traj, DumpFormat format);
Trajectory load_trajectory(const std::filesystem::path& path, DumpFormat format);

}  // namespace fracheat
