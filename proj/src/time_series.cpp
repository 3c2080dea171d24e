#include "windvar/time_series.hpp"

#include <cmath>
#include <numeric>

#include "windvar/errors.hpp"

namespace windvar {

TimeSeries::TimeSeries(double dt_, double start, std::vector<double> v)
    : dt(dt_), start_time(start), values(std::move(v)) {
  validate();
}

void TimeSeries::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("time series dt must be positive");
  if (values.empty()) throw InputError("time series must hold at least one sample");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("time series holds a non-finite value");
  }
}

std::size_t TimeSeries::index_of(double t) const {
  const double pos = (t - start_time) / dt;
  const double rounded = std::round(pos);
  if (std::abs(pos - rounded) > 1e-6) return npos;
  if (rounded < 0.0 || rounded >= static_cast<double>(values.size())) return npos;
  return static_cast<std::size_t>(rounded);
}

bool same_sampling(const TimeSeries& a, const TimeSeries& b) {
  return a.dt == b.dt && a.start_time == b.start_time && a.size() == b.size();
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const double m = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return acc / static_cast<double>(x.size());
}

double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

}  // namespace windvar
