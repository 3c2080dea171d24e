#include "windvar/fleet.hpp"

#include <cmath>
#include <set>

#include "windvar/errors.hpp"

namespace windvar {

void FleetTopology::compute_capacities() {
  for (auto& p : plants) {
    double cap = 0.0;
    for (const auto& id : p.turbine_ids) cap += curve_of(turbine_index(id)).p_rated;
    p.poi_capacity = cap;
  }
}

void FleetTopology::validate() const {
  if (turbines.empty()) throw ConfigError("fleet has no turbines");
  if (plants.empty()) throw ConfigError("fleet has no plants");

  std::set<std::string> turbine_ids;
  for (const auto& t : turbines) {
    if (!turbine_ids.insert(t.id).second) throw ConfigError("duplicate turbine id '" + t.id + "'");
    if (!std::isfinite(t.position.x) || !std::isfinite(t.position.y)) {
      throw ConfigError("turbine '" + t.id + "' has a non-finite position");
    }
    if (!(t.rotor_diameter > 0.0)) {
      throw ConfigError("turbine '" + t.id + "' needs a positive rotor diameter");
    }
    const auto c = curves.find(t.curve_ref);
    if (c == curves.end()) {
      throw ConfigError("turbine '" + t.id + "' references unknown curve '" + t.curve_ref + "'");
    }
    c->second.validate();
  }

  std::set<std::string> plant_ids;
  std::set<std::string> assigned;
  for (const auto& p : plants) {
    if (!plant_ids.insert(p.id).second) throw ConfigError("duplicate plant id '" + p.id + "'");
    if (p.turbine_ids.empty()) throw ConfigError("plant '" + p.id + "' has no turbines");
    double cap = 0.0;
    for (const auto& id : p.turbine_ids) {
      if (!turbine_ids.contains(id)) {
        throw ConfigError("plant '" + p.id + "' references unknown turbine '" + id + "'");
      }
      if (!assigned.insert(id).second) {
        throw ConfigError("turbine '" + id + "' belongs to more than one plant");
      }
      cap += curve_of(turbine_index(id)).p_rated;
    }
    if (cap != p.poi_capacity) {
      throw ConfigError("plant '" + p.id + "' poi_capacity differs from the sum of rated powers");
    }
  }
  if (assigned.size() != turbines.size()) {
    throw ConfigError("every turbine must belong to exactly one plant");
  }
}

std::size_t FleetTopology::turbine_index(const std::string& id) const {
  for (std::size_t i = 0; i < turbines.size(); ++i) {
    if (turbines[i].id == id) return i;
  }
  throw InputError("unknown turbine id '" + id + "'");
}

std::size_t FleetTopology::plant_index(const std::string& id) const {
  for (std::size_t i = 0; i < plants.size(); ++i) {
    if (plants[i].id == id) return i;
  }
  throw InputError("unknown plant id '" + id + "'");
}

const PowerCurve& FleetTopology::curve_of(std::size_t turbine) const {
  const auto it = curves.find(turbines.at(turbine).curve_ref);
  if (it == curves.end()) throw ConfigError("unknown curve '" + turbines[turbine].curve_ref + "'");
  return it->second;
}

std::vector<std::size_t> FleetTopology::members(std::size_t plant) const {
  std::vector<std::size_t> idx;
  for (const auto& id : plants.at(plant).turbine_ids) idx.push_back(turbine_index(id));
  return idx;
}

double FleetTopology::installed_capacity() const {
  double cap = 0.0;
  for (const auto& p : plants) cap += p.poi_capacity;
  return cap;
}

TimeSeries aggregate(const SeriesMap& series_by_turbine, const std::vector<std::string>& group) {
  if (group.empty()) throw InputError("aggregate needs at least one member");
  const TimeSeries* first = nullptr;
  std::vector<double> sum;
  for (const auto& id : group) {
    const auto it = series_by_turbine.find(id);
    if (it == series_by_turbine.end()) throw InputError("missing series for member '" + id + "'");
    const TimeSeries& s = it->second;
    if (first == nullptr) {
      first = &s;
      sum.assign(s.size(), 0.0);
    } else if (!same_sampling(*first, s)) {
      throw InputError("member '" + id + "' has mismatched sampling");
    }
    for (std::size_t i = 0; i < s.size(); ++i) sum[i] += s.values[i];
  }
  return TimeSeries(first->dt, first->start_time, std::move(sum));
}

double smoothing_index(const TimeSeries& member, const TimeSeries& agg, double member_capacity,
                       double aggregate_capacity) {
  if (!same_sampling(member, agg)) throw InputError("member and aggregate must share sampling");
  if (!(member_capacity > 0.0) || !(aggregate_capacity > 0.0)) {
    throw DomainError("capacities must be positive");
  }
  const double sm = stddev(member.values);
  if (sm == 0.0) throw UndefinedError("member series has zero standard deviation");
  return (stddev(agg.values) / aggregate_capacity) / (sm / member_capacity);
}

PoiSeries poi_series(const FleetTopology& fleet, const SeriesMap& per_turbine_power) {
  if (per_turbine_power.empty()) throw InputError("empty power map");
  PoiSeries out;
  for (const auto& p : fleet.plants) {
    out.plant_ids.push_back(p.id);
    out.plants.push_back(aggregate(per_turbine_power, p.turbine_ids));
  }
  std::vector<double> region(out.plants.front().size(), 0.0);
  for (const auto& s : out.plants) {
    for (std::size_t i = 0; i < s.size(); ++i) region[i] += s.values[i];
  }
  out.region = TimeSeries(out.plants.front().dt, out.plants.front().start_time, std::move(region));
  return out;
}

}  // namespace windvar
