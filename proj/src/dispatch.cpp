#include "windvar/dispatch.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "windvar/csv.hpp"
#include "windvar/errors.hpp"

namespace windvar {

void CurtailmentOrder::validate() const {
  if (t_end && !(*t_end > t_start)) throw ConfigError("order t_end must follow t_start");
  if (setpoint && !(*setpoint >= 0.0)) throw ConfigError("order setpoint must be non-negative");
}

double curtailment_ratio(double initial, double setpoint, double real_change) {
  if (setpoint == initial) throw UndefinedError("set point equals initial power; ratio undefined");
  return real_change / (setpoint - initial);
}

double over_response_factor(double commanded_reduction, double effective_reduction) {
  if (!(commanded_reduction > 0.0)) throw DomainError("commanded reduction must be positive");
  return effective_reduction / commanded_reduction;
}

namespace {

double value_at(const TimeSeries& s, double t, const char* what) {
  const auto i = s.index_of(t);
  if (i == TimeSeries::npos) {
    throw InputError(std::string("order ") + what + " at t = " + csv::format_number(t) +
                     " s lies outside the series");
  }
  return s.values[i];
}

}  // namespace

CurtailmentRecord record_period(const TimeSeries& region, const CurtailmentOrder& order) {
  order.validate();
  CurtailmentRecord rec;
  rec.order = order;
  rec.initial_power = value_at(region, order.t_start, "start");
  if (order.is_release()) return rec;

  const double t_end = order.t_end.value_or(region.end_time());
  rec.real_change = value_at(region, t_end, "end") - rec.initial_power;
  if (*order.setpoint != rec.initial_power) {
    rec.ratio = curtailment_ratio(rec.initial_power, *order.setpoint, *rec.real_change);
  }
  return rec;
}

void write_curtailment_csv(std::ostream& os, const std::vector<CurtailmentRecord>& records,
                           std::optional<double> installed_capacity) {
  os << "t_start,t_end,initial_MW,setpoint_MW,real_change_MW,ratio\n";
  for (const auto& r : records) {
    const auto setpoint = r.order.is_release() ? installed_capacity : r.order.setpoint;
    os << csv::format_number(r.order.t_start) << ',' << csv::format_optional(r.order.t_end) << ','
       << csv::format_number(r.initial_power) << ',' << csv::format_optional(setpoint) << ','
       << csv::format_optional(r.real_change) << ',' << csv::format_optional(r.ratio) << '\n';
  }
}

DispatchActions apply_order_plant_level(const FleetTopology& fleet,
                                        std::span<TurbineState> states,
                                        std::span<PlantSwitch> switches,
                                        std::span<const double> available_by_plant,
                                        std::optional<double> setpoint, double min_off_time) {
  const std::size_t np = fleet.plants.size();
  if (switches.size() != np || available_by_plant.size() != np) {
    throw InputError("plant availability must cover every plant");
  }
  if (states.size() != fleet.turbines.size()) throw InputError("state count differs from fleet");

  DispatchActions act;
  if (!setpoint) {
    for (std::size_t p = 0; p < np; ++p) {
      if (switches[p].disconnected) act.reconnected.push_back(p);
      switches[p] = PlantSwitch{};
    }
  } else {
    double connected = 0.0;
    std::vector<std::size_t> on, off;
    for (std::size_t p = 0; p < np; ++p) {
      if (switches[p].disconnected) {
        off.push_back(p);
      } else {
        on.push_back(p);
        connected += available_by_plant[p];
      }
    }

    if (connected > *setpoint) {
      std::stable_sort(on.begin(), on.end(), [&](std::size_t a, std::size_t b) {
        return available_by_plant[a] > available_by_plant[b];
      });
      for (std::size_t p : on) {
        if (connected <= *setpoint) break;
        switches[p] = PlantSwitch{true, 0.0};
        connected -= available_by_plant[p];
        act.disconnected.push_back(p);
      }
    } else {
      std::stable_sort(off.begin(), off.end(), [&](std::size_t a, std::size_t b) {
        return available_by_plant[a] < available_by_plant[b];
      });
      for (std::size_t p : off) {
        if (switches[p].off_time < min_off_time) continue;
        if (connected + available_by_plant[p] > *setpoint) continue;
        switches[p] = PlantSwitch{};
        connected += available_by_plant[p];
        act.reconnected.push_back(p);
      }
    }
  }

  act.connected_available = 0.0;
  for (std::size_t p = 0; p < np; ++p) {
    const double cap = switches[p].disconnected ? 0.0 : std::numeric_limits<double>::infinity();
    if (!switches[p].disconnected) act.connected_available += available_by_plant[p];
    for (std::size_t t : fleet.members(p)) states[t].power_cap = cap;
  }
  return act;
}

double apply_order_turbine_level(const FleetTopology& fleet, std::span<TurbineState> states,
                                 std::span<const double> available, std::optional<double> setpoint) {
  if (states.size() != fleet.turbines.size() || available.size() != states.size()) {
    throw InputError("turbine availability must cover every turbine");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (!setpoint) {
    for (auto& s : states) s.power_cap = inf;
    return inf;
  }
  const double total = std::accumulate(available.begin(), available.end(), 0.0);
  if (total <= 0.0) {
    double caps = 0.0;
    for (const auto& s : states) caps += s.power_cap;
    return caps;
  }
  const double share = std::min(1.0, *setpoint / total);
  double caps = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    states[i].power_cap = available[i] * share;
    caps += states[i].power_cap;
  }
  return caps;
}

OverResponse measure_over_response(const TimeSeries& region, const CurtailmentOrder& order) {
  order.validate();
  OverResponse out;
  out.order = order;
  out.initial_power = value_at(region, order.t_start, "start");
  if (order.is_release()) return out;

  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (order.active_at(region.time_at(i))) {
      sum += region.values[i];
      ++count;
    }
  }
  if (count == 0) throw InputError("order governs no samples of the series");
  out.commanded_reduction = out.initial_power - *order.setpoint;
  out.effective_reduction = out.initial_power - sum / static_cast<double>(count);
  if (out.commanded_reduction > 0.0) {
    out.factor = over_response_factor(out.commanded_reduction, out.effective_reduction);
  }
  return out;
}

void write_over_response_csv(std::ostream& os, const std::vector<OverResponse>& rows) {
  os << "t_start,t_end,initial_MW,setpoint_MW,commanded_reduction_MW,effective_reduction_MW,factor\n";
  for (const auto& r : rows) {
    os << csv::format_number(r.order.t_start) << ',' << csv::format_optional(r.order.t_end) << ','
       << csv::format_number(r.initial_power) << ',' << csv::format_optional(r.order.setpoint)
       << ',' << csv::format_number(r.commanded_reduction) << ','
       << csv::format_number(r.effective_reduction) << ',' << csv::format_optional(r.factor)
       << '\n';
  }
}

}  // namespace windvar
