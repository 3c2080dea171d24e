#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "windvar/fleet.hpp"
#include "windvar/time_series.hpp"
#include "windvar/turbine.hpp"

namespace windvar {

/// A TSO set-point interval. The order governs samples with
/// t_start < t <= t_end, so the sample at t_start is the pre-order power.
/// An absent setpoint releases the fleet to installed capacity.
struct CurtailmentOrder {
  double t_start = 0.0;
  std::optional<double> t_end;
  std::optional<double> setpoint;  // MW, region-level cap

  bool is_release() const { return !setpoint.has_value(); }
  bool active_at(double t) const { return t > t_start && (!t_end || t <= *t_end); }
  void validate() const;
};

struct CurtailmentRecord {
  CurtailmentOrder order;
  double initial_power = 0.0;
  std::optional<double> real_change;
  std::optional<double> ratio;
};

/// real_change / (setpoint - initial). Above one on a reduction means the
/// fleet dropped more than asked; below one on an increase means it rose
/// less. Throws UndefinedError when setpoint == initial.
double curtailment_ratio(double initial, double setpoint, double real_change);

/// effective / commanded. Throws DomainError unless commanded_reduction > 0.
double over_response_factor(double commanded_reduction, double effective_reduction);

/// Samples the region series at the order's endpoints. Open-ended orders run
/// to the end of the series; release orders record only the initial power.
/// Throws InputError when an endpoint is outside the series.
CurtailmentRecord record_period(const TimeSeries& region, const CurtailmentOrder& order);

/// `t_start,t_end,initial_MW,setpoint_MW,real_change_MW,ratio`. Release rows
/// report installed_capacity as the set point when it is known.
void write_curtailment_csv(std::ostream& os, const std::vector<CurtailmentRecord>& records,
                           std::optional<double> installed_capacity = std::nullopt);

enum class DispatchPolicy { plant_level, turbine_level };

/// Whole-plant switching state held by the plant-level policy.
struct PlantSwitch {
  bool disconnected = false;
  double off_time = 0.0;  // s since the plant was switched off
};

inline constexpr double kDefaultMinOffTime = 300.0;  // s

struct DispatchActions {
  std::vector<std::size_t> disconnected;  // plant indices switched off in this call
  std::vector<std::size_t> reconnected;   // plant indices switched back on
  double connected_available = 0.0;       // MW still available after switching
};

/// Whole-plant curtailment.
///
/// While connected availability exceeds the set point, connected plants are
/// switched off largest-available first. Otherwise switched-off plants whose
/// off time reached `min_off_time` are switched back on smallest first as
/// long as the total stays within the set point. No set point (release)
/// reconnects everything. Member turbine caps become 0 for switched-off
/// plants and unbounded otherwise. `available_by_plant` and `switches` are
/// indexed like fleet.plants.
DispatchActions apply_order_plant_level(const FleetTopology& fleet,
                                        std::span<TurbineState> states,
                                        std::span<PlantSwitch> switches,
                                        std::span<const double> available_by_plant,
                                        std::optional<double> setpoint,
                                        double min_off_time = kDefaultMinOffTime);

/// Per-turbine proportional caps: cap_i = available_i * min(1, setpoint / total).
/// No set point clears every cap; zero total availability leaves caps as they are.
/// Returns the sum of the new caps.
double apply_order_turbine_level(const FleetTopology& fleet, std::span<TurbineState> states,
                                 std::span<const double> available_by_turbine,
                                 std::optional<double> setpoint);

/// Over-response of one binding reduction order.
struct OverResponse {
  CurtailmentOrder order;
  double initial_power = 0.0;         // MW at t_start
  double commanded_reduction = 0.0;   // initial - setpoint
  double effective_reduction = 0.0;   // initial - mean delivered power over the order
  std::optional<double> factor;       // absent when the order is not binding
};

/// Measures the order against the region series; effective reduction uses
/// the mean over samples the order governs.
OverResponse measure_over_response(const TimeSeries& region, const CurtailmentOrder& order);

void write_over_response_csv(std::ostream& os, const std::vector<OverResponse>& rows);

}  // namespace windvar
