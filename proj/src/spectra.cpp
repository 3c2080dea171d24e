#include "windvar/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "windvar/errors.hpp"
#include "windvar/kernels.hpp"

namespace windvar {

void SpectralModel::validate() const {
  if (!(mean_speed >= 0.0) || !std::isfinite(mean_speed)) {
    throw ConfigError("spectral model mean_speed must be finite and non-negative");
  }
  for (const auto& c : components) {
    if (!(c.peak_frequency > 0.0) || !std::isfinite(c.peak_frequency)) {
      throw ConfigError("spectral component peak_frequency must be positive");
    }
    if (!(c.variance >= 0.0) || !std::isfinite(c.variance)) {
      throw ConfigError("spectral component variance must be finite and non-negative");
    }
    if (!(c.log_width > 0.0) || !std::isfinite(c.log_width)) {
      throw ConfigError("spectral component log_width must be positive");
    }
  }
}

double SpectralModel::total_variance() const {
  double v = 0.0;
  for (const auto& c : components) v += c.variance;
  return v;
}

double SpectralModel::highest_peak() const {
  double f = 0.0;
  for (const auto& c : components) f = std::max(f, c.peak_frequency);
  return f;
}

SpectralModel SpectralModel::two_peak(double mean_speed, double synoptic_variance,
                                      double turbulence_variance, double log_width) {
  return SpectralModel{{{1.0 / (4.0 * 86400.0), synoptic_variance, log_width},
                        {1.0 / 60.0, turbulence_variance, log_width}},
                       mean_speed};
}

void CoherenceModel::validate() const {
  if (!(decay_constant >= 0.0) || !std::isfinite(decay_constant)) {
    throw ConfigError("coherence decay_constant must be finite and non-negative");
  }
  if (!(mean_speed > 0.0) || !std::isfinite(mean_speed)) {
    throw ConfigError("coherence mean_speed must be positive");
  }
}

double evaluate_psd(const SpectralModel& model, double f) {
  if (!(f > 0.0)) throw DomainError("PSD is defined for f > 0 only");
  const double lf = std::log(f);
  double s = 0.0;
  for (const auto& c : model.components) {
    const double z = (lf - std::log(c.peak_frequency)) / c.log_width;
    s += c.variance * std::exp(-0.5 * z * z) /
         (std::sqrt(2.0 * std::numbers::pi) * c.log_width * f);
  }
  return s;
}

double evaluate_coherence(const CoherenceModel& model, double f, double d) {
  if (!(f >= 0.0) || !(d >= 0.0)) throw DomainError("coherence requires f >= 0 and d >= 0");
  if (f == 0.0 || d == 0.0) return 1.0;
  return std::exp(-model.decay_constant * d * f / model.mean_speed);
}

double PsdEstimate::bin_width() const {
  return frequencies.empty() ? 0.0 : frequencies.front();
}

double PsdEstimate::total_power() const {
  double s = 0.0;
  for (double d : densities) s += d;
  return s * bin_width();
}

std::size_t PsdEstimate::nearest_bin(double f) const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < frequencies.size(); ++i) {
    if (std::abs(frequencies[i] - f) < std::abs(frequencies[best] - f)) best = i;
  }
  return best;
}

PsdEstimate estimate_psd(const TimeSeries& series, std::size_t segment_length,
                         double overlap_fraction, Exec exec) {
  series.validate();
  if (series.size() < 2 * segment_length) {
    throw InputError("series must hold at least two segments");
  }
  const auto plan = kernels::plan_segments(series.size(), segment_length, overlap_fraction);
  const auto sums = kernels::welch_auto(series.values, plan, exec);

  const auto window = kernels::hann(segment_length);
  double wss = 0.0;
  for (double w : window) wss += w * w;

  const double fs = 1.0 / series.dt;
  const double scale = 1.0 / (fs * wss * static_cast<double>(plan.count));
  const std::size_t half = segment_length / 2;

  PsdEstimate est;
  est.segment_length = segment_length;
  est.overlap_fraction = overlap_fraction;
  est.frequencies.reserve(half);
  est.densities.reserve(half);
  for (std::size_t k = 1; k <= half; ++k) {
    const double one_sided = (k == half) ? 1.0 : 2.0;
    est.frequencies.push_back(static_cast<double>(k) * fs / static_cast<double>(segment_length));
    est.densities.push_back(one_sided * sums[k] * scale);
  }
  return est;
}

std::vector<CoherenceBin> estimate_coherence(const TimeSeries& a, const TimeSeries& b,
                                             std::size_t segment_length) {
  a.validate();
  b.validate();
  if (a.dt != b.dt || a.size() != b.size()) {
    throw InputError("coherence inputs must share dt and length");
  }
  const auto plan = kernels::plan_segments(a.size(), segment_length, 0.5);
  if (plan.count < 8) throw InputError("coherence needs at least 8 segments");

  const auto sums = kernels::welch_cross(a.values, b.values, plan, Exec::parallel);
  const double fs = 1.0 / a.dt;
  std::vector<CoherenceBin> out;
  out.reserve(segment_length / 2);
  for (std::size_t k = 1; k <= segment_length / 2; ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(segment_length);
    const double denom = sums.aa[k] * sums.bb[k];
    double c = 0.0;
    if (denom > 0.0) c = std::clamp(std::norm(sums.ab[k]) / denom, 0.0, 1.0);
    out.push_back({f, c});
  }
  return out;
}

}  // namespace windvar
