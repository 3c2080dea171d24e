#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace windvar {

/// Real-input FFT of fixed length backed by FFTW.
///
/// Plans are created under a process-wide lock (the FFTW planner is not
/// re-entrant) with FFTW_ESTIMATE | FFTW_UNALIGNED, so execution is
/// deterministic and may run concurrently from several threads on
/// arbitrary buffers of the planned length.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  /// Number of non-redundant complex bins, n/2 + 1.
  std::size_t bins() const { return n_ / 2 + 1; }

  /// out[k] = sum_j in[j] exp(-2 pi i j k / n), k = 0..n/2. `in` is preserved.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;

  /// Unnormalized inverse of a Hermitian half spectrum. `in` is clobbered.
  void inverse(std::span<std::complex<double>> in, std::span<double> out) const;

 private:
  std::size_t n_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace windvar
