#include "windvar/events.hpp"

#include <cmath>
#include <ostream>

#include "windvar/csv.hpp"
#include "windvar/errors.hpp"

namespace windvar {

std::string_view to_string(RampKind kind) {
  switch (kind) {
    case RampKind::die_out: return "DieOut";
    case RampKind::rise: return "Rise";
    case RampKind::lull: return "Lull";
    case RampKind::gust: return "Gust";
  }
  return "?";
}

std::vector<RampLeg> find_legs(std::span<const double> x, double tol) {
  std::vector<RampLeg> legs;
  if (x.size() < 2) return legs;

  enum class Dir { none, up, down };
  Dir dir = Dir::none;
  std::size_t s = 0;       // leg start
  std::size_t e = 0;       // first index at the running extreme
  std::size_t e_last = 0;  // last index at the running extreme

  for (std::size_t i = 1; i < x.size(); ++i) {
    const double v = x[i];
    if (dir == Dir::none) {
      if (v == x[s]) {
        s = i;
        continue;
      }
      dir = v > x[s] ? Dir::up : Dir::down;
      e = e_last = i;
      continue;
    }

    const bool up = dir == Dir::up;
    const bool extends = up ? v > x[e] : v < x[e];
    if (extends) {
      e = e_last = i;
      continue;
    }
    if (v == x[e]) {
      e_last = i;
      continue;
    }
    const double excursion = std::abs(x[e] - x[s]);
    const double retrace = std::abs(x[e] - v);
    if (retrace > tol * excursion) {
      legs.push_back({s, e, up, excursion});
      s = e_last;
      dir = up ? Dir::down : Dir::up;
      e = e_last = i;
    }
  }
  if (dir != Dir::none) legs.push_back({s, e, dir == Dir::up, std::abs(x[e] - x[s])});
  return legs;
}

std::vector<RampEvent> classify_ramps(const TimeSeries& series, double capacity,
                                      const RampSettings& cfg) {
  series.validate();
  if (!(capacity > 0.0)) throw DomainError("capacity must be positive");
  if (!(cfg.min_change_fraction > 0.0 && cfg.min_change_fraction <= 1.0)) {
    throw ConfigError("min_change_fraction must lie in (0, 1]");
  }
  if (!(cfg.window >= series.dt)) throw ConfigError("ramp window must be at least dt");
  if (!(cfg.gap >= 0.0)) throw ConfigError("ramp gap must be non-negative");

  const double threshold = cfg.min_change_fraction * capacity;
  std::vector<RampLeg> sig;
  for (const auto& leg : find_legs(series.values, cfg.retrace_tolerance)) {
    const double duration = series.time_at(leg.end) - series.time_at(leg.start);
    if (leg.magnitude >= threshold && duration <= cfg.window) sig.push_back(leg);
  }

  auto rate = [&](const RampLeg& leg) {
    return leg.magnitude / ((series.time_at(leg.end) - series.time_at(leg.start)) / 60.0);
  };

  std::vector<RampEvent> events;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const RampLeg& a = sig[i];
    if (i + 1 < sig.size()) {
      const RampLeg& b = sig[i + 1];
      const double sep = series.time_at(b.start) - series.time_at(a.end);
      if (a.rising != b.rising && sep <= cfg.gap) {
        events.push_back({a.rising ? RampKind::gust : RampKind::lull, series.time_at(a.start),
                          series.time_at(b.end), a.magnitude, rate(a)});
        ++i;
        continue;
      }
    }
    events.push_back({a.rising ? RampKind::rise : RampKind::die_out, series.time_at(a.start),
                      series.time_at(a.end), a.magnitude, rate(a)});
  }
  return events;
}

void write_events_csv(std::ostream& os, const std::vector<RampEvent>& events) {
  os << "kind,t_start_s,t_end_s,magnitude_MW,ramp_rate_MW_per_min\n";
  for (const auto& ev : events) {
    os << to_string(ev.kind) << ',' << csv::format_number(ev.t_start) << ','
       << csv::format_number(ev.t_end) << ',' << csv::format_number(ev.magnitude) << ','
       << csv::format_number(ev.ramp_rate) << '\n';
  }
}

void SagSpec::validate() const {
  if (!(outage_duration > 0.0)) throw ConfigError("sag outage_duration must be positive");
  if (affected_plants.empty()) throw ConfigError("sag must affect at least one plant");
}

double apply_sag(const FleetTopology& fleet, std::span<TurbineState> states, const SagSpec& sag) {
  sag.validate();
  if (states.size() != fleet.turbines.size()) throw InputError("state count differs from fleet");
  std::vector<std::size_t> plants;
  for (const auto& id : sag.affected_plants) plants.push_back(fleet.plant_index(id));

  double lost = 0.0;
  for (std::size_t p : plants) {
    if (fleet.plants[p].frt_capable) continue;
    for (std::size_t t : fleet.members(p)) {
      TurbineState& s = states[t];
      if (!s.connected) continue;
      lost += s.last_power;
      s.connected = false;
      s.time_since_trip = 0.0;
      s.trip_cause = TripCause::sag;
      s.forced_outage = sag.outage_duration;
      s.last_power = 0.0;
    }
  }
  return lost;
}

void StormFront::validate() const {
  if (!(speed > 0.0)) throw ConfigError("storm speed must be positive");
  if (!(width > 0.0)) throw ConfigError("storm width must be positive");
  if (!(duration > 0.0)) throw ConfigError("storm duration must be positive");
  if (!(gust_speed > 0.0)) throw ConfigError("storm gust_speed must be positive");
  const double norm = std::hypot(direction.x, direction.y);
  if (std::abs(norm - 1.0) > 1e-9) throw ConfigError("storm direction must be a unit vector");
}

double StormFront::along_track(const Position& p) const {
  return (p.x - origin.x) * direction.x + (p.y - origin.y) * direction.y;
}

std::optional<double> storm_wind_override(const StormFront& front, const Position& position,
                                          double t) {
  const double elapsed = t - front.t_start;
  if (elapsed < 0.0 || elapsed > front.duration) return std::nullopt;
  const double centre = front.speed * elapsed;
  if (std::abs(front.along_track(position) - centre) <= 0.5 * front.width) return front.gust_speed;
  return std::nullopt;
}

}  // namespace windvar
