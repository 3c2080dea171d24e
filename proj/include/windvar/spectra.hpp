#pragma once

#include <cstddef>
#include <vector>

#include "windvar/exec.hpp"
#include "windvar/time_series.hpp"

namespace windvar {

/// One log-normal bump of the wind-speed spectrum.
struct SpectralComponent {
  double peak_frequency = 0.0;  // Hz
  double variance = 0.0;        // (m/s)^2, the area under the bump
  double log_width = 1.0;       // standard deviation in natural-log frequency
};

/// Parametric one-sided wind-speed PSD: a sum of log-normal bumps.
///
/// Each bump is a unit-area density in ln(f) scaled by its variance, so the
/// density per Hz is
///   S(f) = sum_i variance_i * phi((ln f - ln f_i) / w_i) / (w_i * f)
/// and integrates to sum_i variance_i over (0, inf). Two components placed at
/// roughly four days and one minute give the classic synoptic and turbulence
/// peaks with an energy gap in between.
struct SpectralModel {
  std::vector<SpectralComponent> components;
  double mean_speed = 10.0;  // m/s

  void validate() const;
  double total_variance() const;
  double highest_peak() const;

  /// Synoptic (4 day) plus turbulence (1 minute) peaks.
  static SpectralModel two_peak(double mean_speed, double synoptic_variance,
                                double turbulence_variance, double log_width = 0.5);
};

/// Exponential spatial coherence exp(-a d f / u).
struct CoherenceModel {
  double decay_constant = 10.0;  // a, dimensionless
  double mean_speed = 10.0;      // u, m/s

  void validate() const;
};

struct PsdEstimate {
  std::vector<double> frequencies;  // Hz, DC excluded
  std::vector<double> densities;    // units^2 / Hz
  std::size_t segment_length = 0;
  double overlap_fraction = 0.5;

  double bin_width() const;
  /// sum(density) * df, comparable to the detrended sample variance.
  double total_power() const;
  /// Index of the bin whose centre is closest to f.
  std::size_t nearest_bin(double f) const;
};

struct CoherenceBin {
  double frequency;  // Hz
  double coherence;  // magnitude-squared coherence in [0, 1]
};

/// Throws DomainError unless f > 0.
double evaluate_psd(const SpectralModel& model, double f);

/// Throws DomainError for negative f or d. Exactly 1 when f == 0 or d == 0.
double evaluate_coherence(const CoherenceModel& model, double f, double d);

/// Welch estimate: Hann window, per-segment mean removal, one-sided density.
///
/// Requires segment_length a power of two, series length >= 2 * segment_length
/// and 0 <= overlap_fraction < 1. The Nyquist bin is reported when present.
PsdEstimate estimate_psd(const TimeSeries& series, std::size_t segment_length,
                         double overlap_fraction = 0.5, Exec exec = Exec::parallel);

/// Welch magnitude-squared coherence |S_ab|^2 / (S_aa S_bb) with Hann windows
/// and 50% overlap. For a field synthesized with root coherence g its
/// expectation is g^2; the chance level of independent inputs is about
/// 1 / segments. Requires at least 8 segments.
std::vector<CoherenceBin> estimate_coherence(const TimeSeries& a, const TimeSeries& b,
                                             std::size_t segment_length);

}  // namespace windvar
