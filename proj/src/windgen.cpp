#include "windvar/windgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "windvar/csv.hpp"
#include "windvar/errors.hpp"
#include "windvar/fft.hpp"
#include "windvar/kernels.hpp"

namespace windvar {

std::size_t sample_count(double duration, double dt) {
  if (!(dt > 0.0) || !(duration > 0.0)) throw ConfigError("duration and dt must be positive");
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
}

std::vector<std::vector<double>> synthesize_fluctuations(const SpectralModel& psd,
                                                         const CoherenceModel& coh,
                                                         std::span<const Position> positions,
                                                         std::size_t samples, double dt,
                                                         std::uint64_t seed, Exec exec) {
  psd.validate();
  coh.validate();
  if (positions.empty()) throw ConfigError("wind synthesis needs at least one position");
  if (samples < 2) throw ConfigError("wind synthesis needs at least two samples");
  for (const auto& p : positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ConfigError("position must be finite");
  }
  const double nyquist = 0.5 / dt;
  if (!(nyquist > psd.highest_peak())) {
    throw ConfigError("dt too coarse: Nyquist frequency must exceed the highest spectral peak");
  }

  const kernels::ColoringProblem problem{&psd, &coh, positions, samples, dt, seed};
  auto coeffs = kernels::color_spectra(problem, exec);
  return kernels::inverse_rows(coeffs, positions.size(), samples, exec);
}

WindField synthesize_field(const SpectralModel& psd, const CoherenceModel& coh,
                           std::span<const Position> positions, double duration, double dt,
                           std::uint64_t seed, Exec exec) {
  const std::size_t n = sample_count(duration, dt);
  auto rows = synthesize_fluctuations(psd, coh, positions, n, dt, seed, exec);

  WindField field;
  field.positions.assign(positions.begin(), positions.end());
  field.seed = seed;
  field.series.reserve(rows.size());
  for (auto& r : rows) {
    for (double& v : r) v = std::max(0.0, v + psd.mean_speed);
    field.series.emplace_back(dt, 0.0, std::move(r));
  }
  return field;
}

TimeSeries rotor_equivalent(const TimeSeries& series, double rotor_diameter, double mean_speed) {
  series.validate();
  if (!(rotor_diameter >= 0.0)) throw DomainError("rotor diameter must be non-negative");
  if (!(mean_speed > 0.0)) throw DomainError("mean speed must be positive");

  const std::size_t n = series.size();
  const bool constant = std::all_of(series.values.begin(), series.values.end(),
                                    [&](double v) { return v == series.values.front(); });
  if (rotor_diameter == 0.0 || constant || n < 2) return series;

  const double tau = rotor_diameter / mean_speed;
  const double m = mean(series.values);
  std::vector<double> fluct(n);
  for (std::size_t i = 0; i < n; ++i) fluct[i] = series.values[i] - m;

  const RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(fluct, spec);
  spec[0] = 0.0;
  const double df = 1.0 / (static_cast<double>(n) * series.dt);
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const std::complex<double> h =
        1.0 / std::complex<double>(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) * df * tau);
    // The Nyquist bin of an even length is real; keep it real with |H|.
    spec[k] *= (n % 2 == 0 && k == n / 2) ? std::complex<double>(std::abs(h), 0.0) : h;
  }
  fft.inverse(spec, fluct);

  std::vector<double> out(n);
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = m + fluct[i] * norm;
  return TimeSeries(series.dt, series.start_time, std::move(out));
}

void write_csv(std::ostream& os, const WindField& field) {
  std::vector<std::string> header{"time_s"};
  for (std::size_t i = 0; i < field.positions.size(); ++i) header.push_back("pos_" + std::to_string(i));
  std::vector<const TimeSeries*> cols;
  for (const auto& s : field.series) cols.push_back(&s);
  csv::write_columns(os, header, cols);
}

}  // namespace windvar
