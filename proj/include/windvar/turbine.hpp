#pragma once

#include <limits>

namespace windvar {

/// Static wind-to-power conversion with a normalized cubic between cut-in
/// and rated speed.
struct PowerCurve {
  double v_cutin = 4.0;   // m/s
  double v_rated = 12.0;  // m/s
  double v_cutout = 20.0; // m/s
  double v_recut = 18.0;  // m/s, a tripped turbine must see v <= v_recut to reconnect
  double p_rated = 1.0;   // MW

  /// Throws ConfigError unless 0 < cut-in < rated < cut-out, re-cut-in < cut-out, p_rated > 0.
  void validate() const;
};

enum class TripCause { none, cut_out, sag };

struct TurbineState {
  bool connected = true;
  double time_since_trip = 0.0;  // s
  double power_cap = std::numeric_limits<double>::infinity();  // MW
  double last_power = 0.0;       // MW
  TripCause trip_cause = TripCause::none;
  /// Minimum off time imposed by a grid event (sag); cut-out trips use the reconnect delay.
  double forced_outage = 0.0;  // s
};

struct StepResult {
  TurbineState state;
  double power;  // MW
};

inline constexpr double kDefaultReconnectDelay = 600.0;  // s

/// Stateless curve. Zero below cut-in and at or above cut-out. Throws DomainError for v < 0.
double curve_power(const PowerCurve& curve, double v);

/// Advance one turbine by dt.
///
/// A connected turbine trips on v >= v_cutout and produces nothing in that
/// step. A turbine tripped by cut-out reconnects only once v <= v_recut and
/// reconnect_delay has elapsed; one tripped by a sag reconnects once its
/// forced outage has elapsed and v < v_cutout. Connected output is
/// min(curve_power(v), power_cap).
StepResult step_turbine(TurbineState state, const PowerCurve& curve, double v, double dt,
                        double reconnect_delay = kDefaultReconnectDelay);

/// Power the turbine would deliver without a cap: curve_power(v) when connected, else 0.
inline double available_power(const TurbineState& s, const PowerCurve& curve, double v) {
  return s.connected ? curve_power(curve, v) : 0.0;
}

}  // namespace windvar
