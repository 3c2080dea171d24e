#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace windvar {

/// Uniformly sampled scalar series. Units depend on context (m/s for wind, MW for power).
struct TimeSeries {
  double dt = 1.0;
  double start_time = 0.0;
  std::vector<double> values;

  TimeSeries() = default;
  TimeSeries(double dt_, double start, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t i) const { return start_time + static_cast<double>(i) * dt; }
  double end_time() const { return time_at(values.empty() ? 0 : values.size() - 1); }

  /// Sample index for time t, or npos when t does not fall on the grid inside the span.
  std::size_t index_of(double t) const;

  /// Throws InputError unless dt > 0, length >= 1 and every value is finite.
  void validate() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

bool same_sampling(const TimeSeries& a, const TimeSeries& b);

double mean(std::span<const double> x);
/// Population variance (1/N normalization).
double variance(std::span<const double> x);
double stddev(std::span<const double> x);

}  // namespace windvar
