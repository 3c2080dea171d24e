#include "windvar/turbine.hpp"

#include <algorithm>
#include <cmath>

#include "windvar/errors.hpp"

namespace windvar {

void PowerCurve::validate() const {
  if (!(v_cutin > 0.0 && v_cutin < v_rated && v_rated < v_cutout)) {
    throw ConfigError("power curve requires 0 < v_cutin < v_rated < v_cutout");
  }
  if (!(v_recut < v_cutout)) throw ConfigError("power curve requires v_recut < v_cutout");
  if (!(p_rated > 0.0)) throw ConfigError("power curve requires p_rated > 0");
}

double curve_power(const PowerCurve& c, double v) {
  if (!(v >= 0.0)) throw DomainError("wind speed must be non-negative");
  if (v < c.v_cutin || v >= c.v_cutout) return 0.0;
  if (v >= c.v_rated) return c.p_rated;
  const double lo = c.v_cutin * c.v_cutin * c.v_cutin;
  const double hi = c.v_rated * c.v_rated * c.v_rated;
  return c.p_rated * (v * v * v - lo) / (hi - lo);
}

StepResult step_turbine(TurbineState s, const PowerCurve& curve, double v, double dt,
                        double reconnect_delay) {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");

  if (s.connected) {
    if (v >= curve.v_cutout) {
      s.connected = false;
      s.time_since_trip = 0.0;
      s.trip_cause = TripCause::cut_out;
      s.last_power = 0.0;
      return {s, 0.0};
    }
  } else {
    s.time_since_trip += dt;
    const bool may_reconnect =
        s.trip_cause == TripCause::sag
            ? (s.time_since_trip >= s.forced_outage && v < curve.v_cutout)
            : (v <= curve.v_recut && s.time_since_trip >= reconnect_delay);
    if (!may_reconnect) {
      s.last_power = 0.0;
      return {s, 0.0};
    }
    s.connected = true;
    s.trip_cause = TripCause::none;
    s.forced_outage = 0.0;
  }

  const double p = std::min(curve_power(curve, v), s.power_cap);
  s.last_power = p;
  return {s, p};
}

}  // namespace windvar
