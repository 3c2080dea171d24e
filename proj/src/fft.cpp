#include "windvar/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "windvar/errors.hpp"

namespace windvar {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr unsigned kPlanFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2) throw InputError("FFT length must be at least 2");
  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());

  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_r2c_1d(len, real.data(), c, kPlanFlags);
  inverse_plan_ = fftw_plan_dft_c2r_1d(len, c, real.data(), kPlanFlags);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw NumericalError("FFTW failed to create a plan");
  }
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != bins()) throw InputError("FFT buffer size mismatch");
  // r2c plans leave their input intact, the const_cast only satisfies the C signature.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::inverse(std::span<std::complex<double>> in, std::span<double> out) const {
  if (out.size() != n_ || in.size() != bins()) throw InputError("FFT buffer size mismatch");
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(in.data()), out.data());
}

}  // namespace windvar
