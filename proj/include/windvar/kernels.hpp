#pragma once

// Data-parallel inner loops. Every kernel has a plain serial loop and an
// OpenMP loop over the same per-item function; summation order never depends
// on the thread count, so both paths agree bit for bit.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "windvar/exec.hpp"
#include "windvar/geometry.hpp"
#include "windvar/spectra.hpp"
#include "windvar/turbine.hpp"

namespace windvar::kernels {

using Complex = std::complex<double>;

/// In-place lower Cholesky factor of a symmetric positive semidefinite
/// row-major n x n matrix. Pivots at or below `zero_pivot` are treated as
/// exact zeros (the column is dropped), which keeps rank-deficient
/// coherence matrices, e.g. coincident points, exactly rank deficient.
/// Returns false when a pivot is negative beyond roundoff or non-finite.
/// The strict upper triangle is zeroed.
bool psd_cholesky(std::span<double> a, std::size_t n, double zero_pivot);

/// Highest one-sided bin used for synthesis: (samples - 1) / 2. DC and the
/// Nyquist bin of even lengths are left empty.
inline std::size_t synthesis_bins(std::size_t samples) { return (samples - 1) / 2; }

struct ColoringProblem {
  const SpectralModel* psd;
  const CoherenceModel* coherence;
  std::span<const Position> positions;
  std::size_t samples;
  double dt;
  std::uint64_t seed;
};

/// Half-spectrum coefficients ready for an unnormalized inverse real FFT,
/// row-major [position][bin] with samples/2 + 1 bins per row.
///
/// Bin k carries amplitude sqrt(2 S(f_k) df) times the k-th row of the
/// coherence factor applied to unit-modulus random phases drawn from the
/// counter-based stream (seed, position, k). Throws NumericalError naming the
/// frequency when the coherence matrix cannot be factored.
std::vector<Complex> color_spectra(const ColoringProblem& problem, Exec exec);

/// Inverse-transform each coefficient row into a real series of `samples`
/// values. `coeffs` is clobbered.
std::vector<std::vector<double>> inverse_rows(std::vector<Complex>& coeffs, std::size_t rows,
                                              std::size_t samples, Exec exec);

/// Welch segment layout shared by the auto and cross spectra.
struct SegmentPlan {
  std::size_t length;
  std::size_t hop;
  std::size_t count;
};

SegmentPlan plan_segments(std::size_t samples, std::size_t length, double overlap_fraction);

/// Periodic Hann window of the given length.
std::vector<double> hann(std::size_t length);

/// Sum over segments of |FFT(w * (x_seg - mean(x_seg)))|^2, bins 0..L/2.
std::vector<double> welch_auto(std::span<const double> x, const SegmentPlan& plan, Exec exec);

struct CrossSums {
  std::vector<double> aa;
  std::vector<double> bb;
  std::vector<Complex> ab;  // sum of A * conj(B)
};

CrossSums welch_cross(std::span<const double> a, std::span<const double> b,
                      const SegmentPlan& plan, Exec exec);

/// One time step for a whole fleet. `curves[i]` points at turbine i's curve.
/// Writes the capped power to `power` and the uncapped availability to `available`.
void step_fleet(std::span<TurbineState> states, std::span<const PowerCurve* const> curves,
                std::span<const double> wind, double dt, double reconnect_delay,
                std::span<double> power, std::span<double> available, Exec exec);

}  // namespace windvar::kernels
