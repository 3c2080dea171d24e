#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "windvar/fleet.hpp"
#include "windvar/geometry.hpp"
#include "windvar/time_series.hpp"
#include "windvar/turbine.hpp"

namespace windvar {

enum class RampKind { die_out, rise, lull, gust };

std::string_view to_string(RampKind kind);

struct RampEvent {
  RampKind kind;
  double t_start;    // s
  double t_end;      // s
  double magnitude;  // MW, of the leading leg
  double ramp_rate;  // MW/min, of the leading leg
};

struct RampSettings {
  double min_change_fraction = 0.3;  // of capacity
  double window = 4.0 * 3600.0;      // s, longest leg that still counts as a ramp
  double gap = 3600.0;               // s, max pause between the two legs of a lull or gust
  double retrace_tolerance = 0.1;    // fraction of the running excursion a leg may give back
};

/// A maximal monotone excursion between sample indices.
struct RampLeg {
  std::size_t start;
  std::size_t end;
  bool rising;
  double magnitude;
};

/// Splits the series into alternating legs. A leg keeps going while it gives
/// back no more than `retrace_tolerance` of its running excursion; plateaus
/// are trimmed so a leg starts at the last sample of a flat top or bottom and
/// ends at the first sample reaching its extreme.
std::vector<RampLeg> find_legs(std::span<const double> values, double retrace_tolerance);

/// Ramp events, time ordered and non-overlapping.
///
/// Legs of at least min_change_fraction * capacity completed within `window`
/// are significant. A falling leg followed by a rising one starting within
/// `gap` forms a Lull, rising then falling a Gust; any other significant leg
/// is a DieOut or a Rise. Throws ConfigError when window < dt.
std::vector<RampEvent> classify_ramps(const TimeSeries& series, double capacity,
                                      const RampSettings& settings = {});

void write_events_csv(std::ostream& os, const std::vector<RampEvent>& events);

/// A voltage sag that trips every turbine of the affected plants lacking
/// fault ride-through.
struct SagSpec {
  double t = 0.0;  // s
  std::vector<std::string> affected_plants;
  double outage_duration = 60.0;  // s

  void validate() const;
};

/// Trips members of affected non-FRT plants (forced outage = outage_duration)
/// and returns the MW they were producing. FRT-capable plants are untouched.
/// `states` is indexed like fleet.turbines. Throws InputError on unknown plants.
double apply_sag(const FleetTopology& fleet, std::span<TurbineState> states, const SagSpec& sag);

/// A straight band of gust wind advecting across the region.
///
/// The band's centre line passes `origin` at t_start and moves along
/// `direction` at `speed`; it covers a point while the point's along-track
/// coordinate is within width/2 of the centre line and t_start <= t <=
/// t_start + duration.
struct StormFront {
  Position origin;
  Position direction{1.0, 0.0};  // unit vector
  double speed = 20.0;           // m/s
  double width = 20000.0;        // m
  double gust_speed = 30.0;      // m/s
  double duration = 3600.0;      // s
  double t_start = 0.0;          // s

  void validate() const;
  /// Along-track coordinate of p relative to origin.
  double along_track(const Position& p) const;
};

/// gust_speed while the band covers `position`, otherwise nothing.
std::optional<double> storm_wind_override(const StormFront& front, const Position& position,
                                          double t);

}  // namespace windvar
