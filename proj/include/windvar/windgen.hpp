#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "windvar/exec.hpp"
#include "windvar/geometry.hpp"
#include "windvar/spectra.hpp"
#include "windvar/time_series.hpp"

namespace windvar {

/// Wind-speed series at a set of points, all on one time grid.
struct WindField {
  std::vector<Position> positions;
  std::vector<TimeSeries> series;
  std::uint64_t seed = 0;
};

/// Number of samples on [0, duration) at spacing dt.
std::size_t sample_count(double duration, double dt);

/// Zero-mean, spatially coherent fluctuations, one row per position.
///
/// Per-frequency spectral coloring: at every resolvable bin the coherence
/// matrix exp(-a d_jk f / u) is Cholesky factored and applied to unit-modulus
/// random phases, scaled by sqrt(2 S(f) df). Single-point series therefore
/// carry exactly sum_k S(f_k) df of variance. Throws ConfigError when the
/// Nyquist frequency does not exceed the highest spectral peak.
std::vector<std::vector<double>> synthesize_fluctuations(const SpectralModel& psd,
                                                         const CoherenceModel& coh,
                                                         std::span<const Position> positions,
                                                         std::size_t samples, double dt,
                                                         std::uint64_t seed,
                                                         Exec exec = Exec::parallel);

/// Fluctuations plus psd.mean_speed, clamped at 0 m/s. Bit-identical for the
/// same inputs regardless of `exec` or thread count.
WindField synthesize_field(const SpectralModel& psd, const CoherenceModel& coh,
                           std::span<const Position> positions, double duration, double dt,
                           std::uint64_t seed, Exec exec = Exec::parallel);

/// Rotor-disk equivalent wind: first-order low-pass H(f) = 1 / (1 + i 2 pi f tau)
/// with tau = rotor_diameter / mean_speed, applied to the fluctuation around
/// the series mean.
///
/// The filter runs in the frequency domain over the whole record (circular),
/// so the mean is kept exactly and, since |H| <= 1, the variance never grows.
TimeSeries rotor_equivalent(const TimeSeries& series, double rotor_diameter, double mean_speed);

/// `time_s,pos_0,pos_1,...`, one row per sample.
void write_csv(std::ostream& os, const WindField& field);

}  // namespace windvar
