#include "windvar/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "windvar/errors.hpp"
#include "windvar/kernels.hpp"

namespace windvar {

namespace {

SimulationResult replay(const Scenario& sc) {
  SimulationResult res;
  res.replay = true;
  for (const auto& seg : sc.scripted_region) {
    const double t_end = seg.t_end.value_or(sc.duration);
    const auto steps = static_cast<std::size_t>(std::llround((t_end - seg.t_start) / sc.dt));
    std::vector<double> v(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
      const double w = steps == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps);
      v[i] = seg.start_mw + w * (seg.end_mw - seg.start_mw);
    }
    res.scripted_segments.emplace_back(sc.dt, seg.t_start, std::move(v));
  }

  for (const auto& order : sc.orders) {
    const auto it = std::find_if(sc.scripted_region.begin(), sc.scripted_region.end(),
                                 [&](const auto& s) { return s.t_start == order.t_start; });
    const auto& segment = res.scripted_segments[static_cast<std::size_t>(it - sc.scripted_region.begin())];
    res.curtailment.push_back(record_period(segment, order));
  }
  for (const auto& seg : res.scripted_segments) {
    const double cap = *std::max_element(seg.values.begin(), seg.values.end());
    if (cap <= 0.0) continue;
    for (const auto& ev : classify_ramps(seg, cap, sc.ramps)) res.events.push_back(ev);
  }
  return res;
}

// Rotor-equivalent wind per turbine, with the mean profile applied.
std::vector<std::vector<double>> hub_wind(const Scenario& sc, const WindField& field, Exec exec) {
  const std::size_t m = sc.fleet.turbines.size();
  std::vector<std::vector<double>> out(m);
  auto one = [&](std::size_t j) {
    const TimeSeries& raw = field.series[j];
    if (!sc.rotor_filter) {
      out[j] = raw.values;
      return;
    }
    auto eq = rotor_equivalent(raw, sc.fleet.turbines[j].rotor_diameter, sc.coherence.mean_speed);
    for (double& v : eq.values) v = std::max(0.0, v);
    out[j] = std::move(eq.values);
  };
  if (exec == Exec::serial) {
    for (std::size_t j = 0; j < m; ++j) one(j);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < m; ++j) one(j);
  }
  return out;
}

const CurtailmentOrder* active_order(const std::vector<CurtailmentOrder>& orders, double t) {
  for (const auto& o : orders) {
    if (o.active_at(t)) return &o;
  }
  return nullptr;
}

}  // namespace

SimulationResult simulate(const Scenario& sc, Exec exec) {
  sc.validate();
  if (sc.replay()) return replay(sc);

  const FleetTopology& fleet = sc.fleet;
  const std::size_t m = fleet.turbines.size();
  const std::size_t np = fleet.plants.size();
  const std::size_t n = static_cast<std::size_t>(std::llround(sc.duration / sc.dt)) + 1;

  std::vector<Position> positions;
  for (const auto& t : fleet.turbines) positions.push_back(t.position);

  SimulationResult res;
  res.installed_capacity = fleet.installed_capacity();

  auto rows = synthesize_fluctuations(sc.spectrum, sc.coherence, positions, n, sc.dt, sc.seed, exec);
  res.wind.positions = positions;
  res.wind.seed = sc.seed;
  for (auto& r : rows) {
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = std::max(0.0, r[i] + sc.mean_speed_at(static_cast<double>(i) * sc.dt));
    }
    res.wind.series.emplace_back(sc.dt, 0.0, std::move(r));
  }
  const auto hub = hub_wind(sc, res.wind, exec);

  std::vector<const PowerCurve*> curves(m);
  for (std::size_t j = 0; j < m; ++j) curves[j] = &fleet.curve_of(j);
  std::vector<std::vector<std::size_t>> members(np);
  for (std::size_t p = 0; p < np; ++p) members[p] = fleet.members(p);

  std::vector<TurbineState> states(m);
  std::vector<PlantSwitch> switches(np);
  std::vector<double> wind(m), power(m), available(m), plant_available(np);
  std::vector<std::vector<double>> trace(m, std::vector<double>(n));
  std::vector<bool> sag_done(sc.sags.size(), false);
  res.sags.resize(sc.sags.size());

  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * sc.dt;

    for (std::size_t j = 0; j < m; ++j) {
      wind[j] = hub[j][i];
      for (const auto& storm : sc.storms) {
        if (const auto gust = storm_wind_override(storm, positions[j], t)) wind[j] = *gust;
      }
    }

    for (std::size_t s = 0; s < sc.sags.size(); ++s) {
      if (!sag_done[s] && t >= sc.sags[s].t) {
        res.sags[s] = {sc.sags[s], apply_sag(fleet, states, sc.sags[s])};
        sag_done[s] = true;
      }
    }

    kernels::step_fleet(states, curves, wind, sc.dt, sc.reconnect_delay, power, available, exec);

    if (!sc.orders.empty()) {
      const CurtailmentOrder* order = active_order(sc.orders, t);
      const std::optional<double> setpoint = order ? order->setpoint : std::nullopt;
      if (sc.policy == DispatchPolicy::plant_level) {
        for (std::size_t p = 0; p < np; ++p) {
          if (switches[p].disconnected) switches[p].off_time += sc.dt;
          double a = 0.0;
          for (std::size_t j : members[p]) a += available[j];
          plant_available[p] = a;
        }
        apply_order_plant_level(fleet, states, switches, plant_available, setpoint, sc.min_off_time);
      } else {
        apply_order_turbine_level(fleet, states, available, setpoint);
      }
      for (std::size_t j = 0; j < m; ++j) {
        power[j] = states[j].connected ? std::min(available[j], states[j].power_cap) : 0.0;
        states[j].last_power = power[j];
      }
    }

    for (std::size_t j = 0; j < m; ++j) trace[j][i] = power[j];
  }

  SeriesMap by_id;
  for (std::size_t j = 0; j < m; ++j) {
    res.turbine_ids.push_back(fleet.turbines[j].id);
    res.turbine_power.emplace_back(sc.dt, 0.0, std::move(trace[j]));
    by_id.emplace(fleet.turbines[j].id, res.turbine_power.back());
  }
  res.poi = poi_series(fleet, by_id);
  res.events = classify_ramps(res.poi.region, res.installed_capacity, sc.ramps);

  for (const auto& order : sc.orders) {
    res.curtailment.push_back(record_period(res.poi.region, order));
    if (!order.is_release()) res.over_response.push_back(measure_over_response(res.poi.region, order));
  }
  return res;
}

}  // namespace windvar
