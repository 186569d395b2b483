#include "fracheat/trajectory_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "fracheat/errors.hpp"

namespace fracheat {

namespace {

constexpr char kMagic[8] = {'F', 'H', 'T', 'R', 'A', 'J', '1', '\n'};

template <class T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  os.write(buf, 8);
}

template <class T>
T get_le(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw IoError("truncated trajectory dump");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

Trajectory assemble(double lambda, std::uint64_t M, double dt, std::vector<std::vector<Complex>> nodes) {
  const TorusGrid grid(lambda, static_cast<std::size_t>(M));
  std::vector<SpectralField> fields;
  fields.reserve(nodes.size());
  for (auto& c : nodes) {
    const bool real = hermitian_defect(grid, c) <= 1e-12;
    fields.emplace_back(grid, std::move(c), real);
  }
  return Trajectory(grid, dt, std::move(fields));
}

}  // namespace

void write_trajectory(std::ostream& os, const Trajectory& traj, DumpFormat format) {
  const auto M = static_cast<std::uint64_t>(traj.grid().modes());
  const auto n = static_cast<std::uint64_t>(traj.size());
  if (format == DumpFormat::Binary) {
    os.write(kMagic, sizeof kMagic);
    put_le(os, traj.grid().period());
    put_le(os, M);
    put_le(os, traj.dt());
    put_le(os, n);
    for (const auto& f : traj.fields()) {
      for (const auto& c : f.coeffs()) {
        put_le(os, c.real());
        put_le(os, c.imag());
      }
    }
  } else {
    os.precision(17);
    os << traj.grid().period() << ' ' << M << ' ' << traj.dt() << ' ' << n << '\n';
    for (const auto& f : traj.fields()) {
      for (const auto& c : f.coeffs()) os << c.real() << ' ' << c.imag() << '\n';
    }
  }
  if (!os) throw IoError("failed to write trajectory dump");
}

Trajectory read_trajectory(std::istream& is, DumpFormat format) {
  double lambda = 0.0;
  double dt = 0.0;
  std::uint64_t M = 0;
  std::uint64_t n = 0;
  if (format == DumpFormat::Binary) {
    char magic[sizeof kMagic];
    if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
      throw IoError("not a trajectory dump");
    }
    lambda = get_le<double>(is);
    M = get_le<std::uint64_t>(is);
    dt = get_le<double>(is);
    n = get_le<std::uint64_t>(is);
  } else if (!(is >> lambda >> M >> dt >> n)) {
    throw IoError("malformed trajectory header");
  }
  if (M == 0 || M > (std::uint64_t{1} << 26)) throw IoError("implausible mode count in dump");
  std::vector<std::vector<Complex>> nodes(static_cast<std::size_t>(n));
  for (auto& c : nodes) {
    c.resize(static_cast<std::size_t>(M));
    for (auto& v : c) {
      double re = 0.0;
      double im = 0.0;
      if (format == DumpFormat::Binary) {
        re = get_le<double>(is);
        im = get_le<double>(is);
      } else if (!(is >> re >> im)) {
        throw IoError("truncated trajectory dump");
      }
      v = Complex(re, im);
    }
  }
  return assemble(lambda, M, dt, std::move(nodes));
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& traj, DumpFormat format) {
  std::ofstream os(path, format == DumpFormat::Binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_trajectory(os, traj, format);
}

Trajectory load_trajectory(const std::filesystem::path& path, DumpFormat format) {
  std::ifstream is(path, format == DumpFormat::Binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError("cannot open " + path.string());
  return read_trajectory(is, format);
}

}  // namespace fracheat
