#include "fracheat/detail/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "fracheat/errors.hpp"

namespace fracheat::detail {

namespace {

enum class Kind { R2C, C2R, C2CForward, C2CInverse };

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays is. Plans live for the process lifetime.
class PlanCache {
 public:
  fftw_plan get(Kind kind, std::size_t n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    std::vector<double> r(n);
    std::vector<std::complex<double>> a(n), b(n);
    auto* ca = reinterpret_cast<fftw_complex*>(a.data());
    auto* cb = reinterpret_cast<fftw_complex*>(b.data());
    switch (kind) {
      case Kind::R2C:
        plan = fftw_plan_dft_r2c_1d(len, r.data(), ca, flags);
        break;
      case Kind::C2R:
        plan = fftw_plan_dft_c2r_1d(len, ca, r.data(), flags);
        break;
      case Kind::C2CForward:
        plan = fftw_plan_dft_1d(len, ca, cb, FFTW_FORWARD, flags);
        break;
      case Kind::C2CInverse:
        plan = fftw_plan_dft_1d(len, ca, cb, FFTW_BACKWARD, flags);
        break;
    }
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<Kind, std::size_t>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void require(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

void forward_real(std::span<const double> in, std::span<std::complex<double>> out) {
  const std::size_t n = in.size();
  require(out.size() == n, "forward_real: output length mismatch");
  std::vector<std::complex<double>> half(n / 2 + 1);
  fftw_execute_dft_r2c(cache().get(Kind::R2C, n), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(half.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= n / 2; ++k) out[k] = half[k] * scale;
  for (std::size_t k = 1; k < n / 2; ++k) out[n - k] = std::conj(out[k]);
}

void inverse_real(std::span<const std::complex<double>> in, std::span<double> out) {
  const std::size_t n = in.size();
  require(out.size() == n, "inverse_real: output length mismatch");
  // c2r destroys its input; work on a copy of the half spectrum.
  std::vector<std::complex<double>> half(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n / 2 + 1));
  fftw_execute_dft_c2r(cache().get(Kind::C2R, n), reinterpret_cast<fftw_complex*>(half.data()),
                       out.data());
}

void forward_complex(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out) {
  const std::size_t n = in.size();
  require(out.size() == n, "forward_complex: output length mismatch");
  fftw_execute_dft(cache().get(Kind::C2CForward, n),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= scale;
}

void inverse_complex(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out) {
  const std::size_t n = in.size();
  require(out.size() == n, "inverse_complex: output length mismatch");
  fftw_execute_dft(cache().get(Kind::C2CInverse, n),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace fracheat::detail
