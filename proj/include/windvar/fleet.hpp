#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "windvar/geometry.hpp"
#include "windvar/time_series.hpp"
#include "windvar/turbine.hpp"

namespace windvar {

struct TurbineSite {
  std::string id;
  Position position;
  double rotor_diameter = 80.0;  // m
  std::string curve_ref = "default";
};

struct Plant {
  std::string id;
  std::vector<std::string> turbine_ids;
  bool frt_capable = true;
  double poi_capacity = 0.0;  // MW, sum of member rated power
};

/// Turbines grouped into plants grouped into one region.
struct FleetTopology {
  std::vector<TurbineSite> turbines;
  std::vector<Plant> plants;
  std::string region_name = "region";
  std::map<std::string, PowerCurve> curves;

  /// Sets each plant's poi_capacity to the sum of its members' rated power.
  void compute_capacities();

  /// Throws ConfigError on unresolved ids, turbines in zero or several plants,
  /// empty plants, non-positive rotor diameters or a stale poi_capacity.
  void validate() const;

  std::size_t turbine_index(const std::string& id) const;
  std::size_t plant_index(const std::string& id) const;
  const PowerCurve& curve_of(std::size_t turbine) const;
  /// Turbine indices of plant p, in the plant's declared order.
  std::vector<std::size_t> members(std::size_t plant) const;
  double installed_capacity() const;
};

using SeriesMap = std::map<std::string, TimeSeries>;

/// Element-wise sum of the group's series. Throws InputError on missing
/// members, an empty group, or mismatched sampling.
TimeSeries aggregate(const SeriesMap& series_by_turbine, const std::vector<std::string>& group);

/// (std(aggregate) / aggregate_capacity) / (std(member) / member_capacity).
///
/// A value below one means the aggregate fluctuates less per unit of
/// capacity than the member. This is a scalar stand-in for visual
/// single-turbine vs plant vs region comparisons. Throws UndefinedError when
/// the member has zero standard deviation.
double smoothing_index(const TimeSeries& member, const TimeSeries& aggregate,
                       double member_capacity, double aggregate_capacity);

struct PoiSeries {
  std::vector<std::string> plant_ids;
  std::vector<TimeSeries> plants;  // aligned with plant_ids
  TimeSeries region;
};

/// Per-plant sums at each point of interconnection, and the region as the sum
/// of the plant series (in plant order).
PoiSeries poi_series(const FleetTopology& fleet, const SeriesMap& per_turbine_power);

}  // namespace windvar
