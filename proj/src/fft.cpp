#include "noisebench/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "noisebench/errors.hpp"

namespace noisebench::fft {

// Plans are cached per (size, kind) and reused via fftw_execute_dft, which is
// thread-safe.  Plan creation is not, hence the mutex.  FFTW_UNALIGNED lets a
// cached plan run on any caller buffer; FFTW_ESTIMATE keeps planning
// deterministic (no runtime measurement).
namespace {

struct PlanCache {
  std::mutex mu;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  fftw_plan get(std::size_t n, int kind) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find({n, kind});
    if (it != plans.end()) return it->second;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = nullptr;
    if (kind == FFTW_FORWARD || kind == FFTW_BACKWARD) {
      std::vector<fftw_complex> a(n), b(n);
      p = fftw_plan_dft_1d(static_cast<int>(n), a.data(), b.data(), kind, flags);
    } else if (kind == 2) {  // r2c
      std::vector<double> a(n);
      std::vector<fftw_complex> b(n / 2 + 1);
      p = fftw_plan_dft_r2c_1d(static_cast<int>(n), a.data(), b.data(), flags);
    } else {  // c2r
      std::vector<fftw_complex> a(n / 2 + 1);
      std::vector<double> b(n);
      p = fftw_plan_dft_c2r_1d(static_cast<int>(n), a.data(), b.data(), flags);
    }
    require(p != nullptr, ErrorCategory::NumericalDesign, "fftw plan creation failed");
    plans.emplace(std::make_pair(n, kind), p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void dft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
         bool inverse) {
  const std::size_t n = in.size();
  require(out.size() == n, ErrorCategory::InvalidInput, "dft output size mismatch");
  if (n == 0) return;
  std::vector<std::complex<double>> tmp(in.begin(), in.end());
  fftw_plan p = cache().get(n, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  fftw_execute_dft(p, as_fftw(tmp.data()), as_fftw(out.data()));
}

std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& in, bool inverse) {
  std::vector<std::complex<double>> out(in.size());
  dft(std::span<const std::complex<double>>(in), std::span<std::complex<double>>(out), inverse);
  return out;
}

void rfft(std::span<const double> in, std::span<std::complex<double>> out) {
  const std::size_t n = in.size();
  require(n > 0, ErrorCategory::InvalidInput, "rfft of empty input");
  require(out.size() == n / 2 + 1, ErrorCategory::InvalidInput, "rfft output size mismatch");
  std::vector<double> tmp(in.begin(), in.end());
  fftw_plan p = cache().get(n, 2);
  fftw_execute_dft_r2c(p, tmp.data(), as_fftw(out.data()));
}

void irfft(std::span<const std::complex<double>> in, std::span<double> out) {
  const std::size_t n = out.size();
  require(n > 0, ErrorCategory::InvalidInput, "irfft to empty output");
  require(in.size() == n / 2 + 1, ErrorCategory::InvalidInput, "irfft input size mismatch");
  // c2r destroys its input, so run it on a scratch copy.
  std::vector<std::complex<double>> tmp(in.begin(), in.end());
  fftw_plan p = cache().get(n, 3);
  fftw_execute_dft_c2r(p, as_fftw(tmp.data()), out.data());
}

}  // namespace noisebench::fft
