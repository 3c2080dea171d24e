#include "windvar/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>

namespace windvar {

using nlohmann::json;

namespace {

// Typed access to one JSON object with path-qualified errors and a strict key set.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
    throw SchemaError(path, msg);
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }
  const std::string& path() const { return path_; }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.contains(k)) fail(at(k), "unknown field");
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return number_value(raw(key), at(key));
  }

  double number(const std::string& key) const {
    if (!has(key)) fail(at(key), "required field missing");
    return number_value(raw(key), at(key));
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!raw(key).is_boolean()) fail(at(key), "expected true or false");
    return raw(key).get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!raw(key).is_string()) fail(at(key), "expected a string");
    return raw(key).get<std::string>();
  }

  const json& array(const std::string& key) const {
    if (!raw(key).is_array()) fail(at(key), "expected an array");
    return raw(key);
  }

  Position point(const std::string& key, Position fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_array() || v.size() != 2) fail(at(key), "expected [x, y]");
    return {number_value(v[0], at(key) + "[0]"), number_value(v[1], at(key) + "[1]")};
  }

  static double number_value(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "expected a finite number");
    return d;
  }

 private:
  const json& j_;
  std::string path_;
};

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw SchemaError(path, msg);
}

// Re-throws module-level ConfigErrors with the JSON path prefixed.
template <class F>
void checked(const std::string& path, F&& f) {
  try {
    f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

SpectralModel parse_spectrum(const Node& n, Scenario& sc) {
  n.allow({"mean_speed", "components", "mean_speed_profile", "rotor_filter"});
  SpectralModel m = sc.spectrum;
  m.mean_speed = n.number("mean_speed", m.mean_speed);
  if (n.has("components")) {
    m.components.clear();
    const json& arr = n.array("components");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const Node c(arr[i], n.at("components") + "[" + std::to_string(i) + "]");
      c.allow({"peak_frequency", "peak_period_s", "variance", "log_width"});
      SpectralComponent comp;
      if (c.has("peak_period_s")) {
        require(!c.has("peak_frequency"), c.path(), "give peak_frequency or peak_period_s, not both");
        const double period = c.number("peak_period_s");
        require(period > 0.0, c.at("peak_period_s"), "must be positive");
        comp.peak_frequency = 1.0 / period;
      } else {
        comp.peak_frequency = c.number("peak_frequency");
      }
      comp.variance = c.number("variance");
      comp.log_width = c.number("log_width", 0.5);
      m.components.push_back(comp);
    }
  }
  if (n.has("mean_speed_profile")) {
    const json& arr = n.array("mean_speed_profile");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = n.at("mean_speed_profile") + "[" + std::to_string(i) + "]";
      require(arr[i].is_array() && arr[i].size() == 2, p, "expected [t, speed]");
      const double t = parse_clock(arr[i][0], p + "[0]");
      const double v = Node::number_value(arr[i][1], p + "[1]");
      require(v >= 0.0, p + "[1]", "mean speed must be non-negative");
      require(sc.mean_speed_profile.empty() || t > sc.mean_speed_profile.back().first, p,
              "profile times must increase");
      sc.mean_speed_profile.emplace_back(t, v);
    }
  }
  sc.rotor_filter = n.boolean("rotor_filter", sc.rotor_filter);
  checked(n.path(), [&] { m.validate(); });
  return m;
}

PowerCurve parse_curve(const Node& n, double& rotor_diameter) {
  n.allow({"v_cutin", "v_rated", "v_cutout", "v_recut", "p_rated_MW", "rotor_diameter_m"});
  PowerCurve c;
  c.v_cutin = n.number("v_cutin", c.v_cutin);
  c.v_rated = n.number("v_rated", c.v_rated);
  c.v_cutout = n.number("v_cutout", c.v_cutout);
  c.v_recut = n.number("v_recut", c.v_recut);
  c.p_rated = n.number("p_rated_MW", c.p_rated);
  rotor_diameter = n.number("rotor_diameter_m", 80.0);
  require(rotor_diameter > 0.0, n.at("rotor_diameter_m"), "must be positive");
  checked(n.path(), [&] { c.validate(); });
  return c;
}

FleetTopology parse_fleet(const Node& n) {
  n.allow({"region", "turbine_types", "plants"});
  FleetTopology f;
  f.region_name = n.string("region", "region");

  std::map<std::string, double> rotor;
  f.curves["default"] = PowerCurve{};
  rotor["default"] = 80.0;
  if (n.has("turbine_types")) {
    const json& types = n.raw("turbine_types");
    require(types.is_object(), n.at("turbine_types"), "expected an object of named types");
    for (const auto& [name, body] : types.items()) {
      double d = 0.0;
      f.curves[name] = parse_curve(Node(body, n.at("turbine_types") + "." + name), d);
      rotor[name] = d;
    }
  }

  if (!n.has("plants")) {
    f.turbines.push_back({"P1_T1", {0.0, 0.0}, rotor["default"], "default"});
    f.plants.push_back({"P1", {"P1_T1"}, true, 0.0});
    f.compute_capacities();
    return f;
  }

  const json& plants = n.array("plants");
  require(!plants.empty(), n.at("plants"), "at least one plant is required");
  for (std::size_t i = 0; i < plants.size(); ++i) {
    const Node p(plants[i], n.at("plants") + "[" + std::to_string(i) + "]");
    p.allow({"id", "frt_capable", "turbine_type", "turbines", "layout"});
    Plant plant;
    plant.id = p.string("id", "P" + std::to_string(i + 1));
    plant.frt_capable = p.boolean("frt_capable", true);
    const std::string type = p.string("turbine_type", "default");
    require(f.curves.contains(type), p.at("turbine_type"), "unknown turbine type '" + type + "'");

    auto add = [&](std::string id, Position pos) {
      f.turbines.push_back({id, pos, rotor[type], type});
      plant.turbine_ids.push_back(std::move(id));
    };

    require(p.has("turbines") != p.has("layout"), p.path(), "give exactly one of turbines or layout");
    if (p.has("turbines")) {
      const json& ts = p.array("turbines");
      for (std::size_t k = 0; k < ts.size(); ++k) {
        const Node t(ts[k], p.at("turbines") + "[" + std::to_string(k) + "]");
        t.allow({"id", "x", "y"});
        add(t.string("id", plant.id + "_T" + std::to_string(k + 1)), {t.number("x"), t.number("y")});
      }
    } else {
      const Node l(p.raw("layout"), p.at("layout"));
      l.allow({"count", "columns", "spacing_m", "origin"});
      const double count = l.number("count");
      require(count >= 1.0 && count == std::floor(count), l.at("count"), "must be a positive integer");
      const double cols = l.number("columns", count);
      require(cols >= 1.0 && cols == std::floor(cols), l.at("columns"), "must be a positive integer");
      const double spacing = l.number("spacing_m", 400.0);
      require(spacing > 0.0, l.at("spacing_m"), "must be positive");
      const Position origin = l.point("origin", {0.0, 0.0});
      const auto nc = static_cast<std::size_t>(cols);
      for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
        add(plant.id + "_T" + std::to_string(k + 1),
            {origin.x + spacing * static_cast<double>(k % nc),
             origin.y + spacing * static_cast<double>(k / nc)});
      }
    }
    require(!plant.turbine_ids.empty(), p.path(), "plant has no turbines");
    f.plants.push_back(std::move(plant));
  }
  checked(n.at("plants"), [&] {
    f.compute_capacities();
    f.validate();
  });
  return f;
}

void parse_dispatch(const Node& n, Scenario& sc) {
  n.allow({"policy", "min_off_time_s", "orders"});
  const std::string policy = n.string("policy", "plant_level");
  if (policy == "plant_level") {
    sc.policy = DispatchPolicy::plant_level;
  } else if (policy == "turbine_level") {
    sc.policy = DispatchPolicy::turbine_level;
  } else {
    throw SchemaError(n.at("policy"), "expected plant_level or turbine_level");
  }
  sc.min_off_time = n.number("min_off_time_s", sc.min_off_time);
  require(sc.min_off_time >= 0.0, n.at("min_off_time_s"), "must be non-negative");
  if (!n.has("orders")) return;

  const double installed = sc.replay() ? 0.0 : sc.fleet.installed_capacity();
  const json& arr = n.array("orders");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Node o(arr[i], n.at("orders") + "[" + std::to_string(i) + "]");
    o.allow({"t_start", "t_end", "setpoint_MW", "setpoint_pu", "setpoint", "release"});
    CurtailmentOrder order;
    require(o.has("t_start"), o.at("t_start"), "required field missing");
    order.t_start = parse_clock(o.raw("t_start"), o.at("t_start"));
    if (o.has("t_end")) order.t_end = parse_clock(o.raw("t_end"), o.at("t_end"));

    const bool release = o.boolean("release", false) ||
                         (o.has("setpoint") && o.raw("setpoint") == json("release"));
    const int given = int(o.has("setpoint_MW")) + int(o.has("setpoint_pu")) + int(release);
    require(given == 1, o.path(), "give exactly one of setpoint_MW, setpoint_pu or release");
    if (o.has("setpoint")) require(release, o.at("setpoint"), "only \"release\" is accepted here");
    if (o.has("setpoint_MW")) order.setpoint = o.number("setpoint_MW");
    if (o.has("setpoint_pu")) {
      require(!sc.replay(), o.at("setpoint_pu"), "per-unit set points need a simulated fleet");
      order.setpoint = o.number("setpoint_pu") * installed;
    }
    checked(o.path(), [&] { order.validate(); });
    sc.orders.push_back(order);
  }
  std::stable_sort(sc.orders.begin(), sc.orders.end(),
                   [](const auto& a, const auto& b) { return a.t_start < b.t_start; });
}

}  // namespace

double parse_clock(const json& v, const std::string& path) {
  if (v.is_number()) return Node::number_value(v, path);
  if (!v.is_string()) throw SchemaError(path, "expected seconds or an \"H:MM[:SS]\" string");
  const std::string s = v.get<std::string>();
  static const std::regex clock(R"((\d+):(\d{2})(?::(\d{2}))?)");
  std::smatch m;
  if (!std::regex_match(s, m, clock)) throw SchemaError(path, "malformed clock time '" + s + "'");
  const double h = std::stod(m[1]), mm = std::stod(m[2]), ss = m[3].matched ? std::stod(m[3]) : 0.0;
  if (mm >= 60 || ss >= 60) throw SchemaError(path, "minutes and seconds must be < 60");
  return h * 3600.0 + mm * 60.0 + ss;
}

double Scenario::mean_speed_at(double t) const {
  const auto& p = mean_speed_profile;
  if (p.empty()) return spectrum.mean_speed;
  if (t <= p.front().first) return p.front().second;
  if (t >= p.back().first) return p.back().second;
  const auto hi = std::upper_bound(p.begin(), p.end(), t,
                                   [](double x, const auto& e) { return x < e.first; });
  const auto lo = hi - 1;
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

void Scenario::validate() const {
  require(duration > 0.0, "$.duration_s", "must be positive");
  require(dt > 0.0, "$.dt_s", "must be positive");
  const double steps = duration / dt;
  require(std::abs(steps - std::round(steps)) < 1e-9 * std::max(1.0, steps), "$.dt_s",
          "dt must divide duration");
  require(steps >= 2.0, "$.dt_s", "scenario must span at least two steps");

  if (replay()) {
    for (std::size_t i = 0; i < scripted_region.size(); ++i) {
      const auto& s = scripted_region[i];
      const std::string p = "$.scripted_region[" + std::to_string(i) + "]";
      require(s.t_start >= 0.0 && s.t_start < duration, p + ".t_start", "outside the scenario");
      if (s.t_end) require(*s.t_end > s.t_start && *s.t_end <= duration, p + ".t_end", "outside the scenario or before t_start");
    }
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const bool matched = std::any_of(scripted_region.begin(), scripted_region.end(),
                                       [&](const auto& s) { return s.t_start == orders[i].t_start; });
      require(matched, "$.dispatch.orders[" + std::to_string(i) + "].t_start",
              "replay orders must start where a scripted segment starts");
    }
    return;
  }

  checked("$.coherence", [&] { coherence.validate(); });
  require(0.5 / dt > spectrum.highest_peak(), "$.dt_s",
          "Nyquist frequency must exceed the highest spectral peak");

  for (std::size_t i = 0; i < orders.size(); ++i) {
    const std::string p = "$.dispatch.orders[" + std::to_string(i) + "]";
    require(orders[i].t_start >= 0.0 && orders[i].t_start <= duration, p + ".t_start", "outside the scenario");
    if (orders[i].t_end) require(*orders[i].t_end <= duration, p + ".t_end", "outside the scenario");
    if (i > 0) {
      const auto& prev = orders[i - 1];
      require(prev.t_end && *prev.t_end <= orders[i].t_start, p, "orders must not overlap");
    }
  }

  double max_cutout = 0.0;
  for (const auto& [name, c] : fleet.curves) max_cutout = std::max(max_cutout, c.v_cutout);
  for (std::size_t i = 0; i < storms.size(); ++i) {
    const std::string p = "$.storms[" + std::to_string(i) + "]";
    checked(p, [&] { storms[i].validate(); });
    require(storms[i].gust_speed > max_cutout, p + ".gust_speed_mps", "must exceed the fleet's cut-out speed");
  }
  for (std::size_t i = 0; i < sags.size(); ++i) {
    const std::string p = "$.sags[" + std::to_string(i) + "]";
    checked(p, [&] { sags[i].validate(); });
    for (const auto& id : sags[i].affected_plants) {
      checked(p + ".plants", [&] { (void)fleet.plant_index(id); });
    }
  }
}

Scenario parse_scenario(const json& doc) {
  const Node root(doc, "$");
  root.allow({"duration_s", "dt_s", "seed", "wind", "coherence", "fleet", "turbine", "dispatch",
              "sags", "storms", "ramps", "scripted_region", "output_dir", "description"});
  Scenario sc;
  if (root.has("duration_s")) sc.duration = parse_clock(root.raw("duration_s"), root.at("duration_s"));
  sc.dt = root.number("dt_s", sc.dt);
  if (root.has("seed")) {
    const json& s = root.raw("seed");
    require(s.is_number_unsigned() || (s.is_number_integer() && s.get<std::int64_t>() >= 0),
            root.at("seed"), "expected a non-negative integer");
    sc.seed = s.get<std::uint64_t>();
  }
  sc.output_dir = root.string("output_dir", sc.output_dir);

  if (root.has("wind")) sc.spectrum = parse_spectrum(Node(root.raw("wind"), root.at("wind")), sc);

  sc.coherence.mean_speed = sc.spectrum.mean_speed > 0.0 ? sc.spectrum.mean_speed : 1.0;
  if (root.has("coherence")) {
    const Node c(root.raw("coherence"), root.at("coherence"));
    c.allow({"decay_constant", "mean_speed"});
    sc.coherence.decay_constant = c.number("decay_constant", sc.coherence.decay_constant);
    sc.coherence.mean_speed = c.number("mean_speed", sc.coherence.mean_speed);
  }

  if (root.has("scripted_region")) {
    const json& arr = root.array("scripted_region");
    require(!arr.empty(), root.at("scripted_region"), "needs at least one segment");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const Node s(arr[i], root.at("scripted_region") + "[" + std::to_string(i) + "]");
      s.allow({"t_start", "t_end", "start_MW", "end_MW", "change_MW"});
      ScriptedSegment seg;
      require(s.has("t_start"), s.at("t_start"), "required field missing");
      seg.t_start = parse_clock(s.raw("t_start"), s.at("t_start"));
      if (s.has("t_end")) seg.t_end = parse_clock(s.raw("t_end"), s.at("t_end"));
      seg.start_mw = s.number("start_MW");
      require(!(s.has("end_MW") && s.has("change_MW")), s.path(), "give end_MW or change_MW, not both");
      seg.end_mw = s.has("change_MW") ? seg.start_mw + s.number("change_MW")
                                      : s.number("end_MW", seg.start_mw);
      sc.scripted_region.push_back(seg);
    }
  }

  if (root.has("fleet")) {
    sc.fleet = parse_fleet(Node(root.raw("fleet"), root.at("fleet")));
  } else {
    sc.fleet = parse_fleet(Node(json::object(), root.at("fleet")));
  }

  if (root.has("turbine")) {
    const Node t(root.raw("turbine"), root.at("turbine"));
    t.allow({"reconnect_delay_s"});
    sc.reconnect_delay = t.number("reconnect_delay_s", sc.reconnect_delay);
    require(sc.reconnect_delay >= 0.0, t.at("reconnect_delay_s"), "must be non-negative");
  }

  if (root.has("dispatch")) parse_dispatch(Node(root.raw("dispatch"), root.at("dispatch")), sc);

  if (root.has("sags")) {
    const json& arr = root.array("sags");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const Node s(arr[i], root.at("sags") + "[" + std::to_string(i) + "]");
      s.allow({"t", "plants", "outage_duration_s"});
      SagSpec sag;
      require(s.has("t"), s.at("t"), "required field missing");
      sag.t = parse_clock(s.raw("t"), s.at("t"));
      sag.outage_duration = s.number("outage_duration_s", sag.outage_duration);
      require(s.has("plants"), s.at("plants"), "required field missing");
      for (const auto& id : s.array("plants")) {
        require(id.is_string(), s.at("plants"), "expected plant id strings");
        sag.affected_plants.push_back(id.get<std::string>());
      }
      sc.sags.push_back(std::move(sag));
    }
  }

  if (root.has("storms")) {
    const json& arr = root.array("storms");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const Node s(arr[i], root.at("storms") + "[" + std::to_string(i) + "]");
      s.allow({"origin", "direction", "speed_mps", "width_m", "gust_speed_mps", "duration_s", "t_start"});
      StormFront f;
      f.origin = s.point("origin", f.origin);
      Position d = s.point("direction", f.direction);
      const double norm = std::hypot(d.x, d.y);
      require(norm > 0.0, s.at("direction"), "must be non-zero");
      f.direction = {d.x / norm, d.y / norm};
      f.speed = s.number("speed_mps", f.speed);
      f.width = s.number("width_m", f.width);
      f.gust_speed = s.number("gust_speed_mps", f.gust_speed);
      f.duration = s.number("duration_s", f.duration);
      if (s.has("t_start")) f.t_start = parse_clock(s.raw("t_start"), s.at("t_start"));
      sc.storms.push_back(f);
    }
  }

  if (root.has("ramps")) {
    const Node r(root.raw("ramps"), root.at("ramps"));
    r.allow({"min_change_fraction", "window_s", "gap_s", "retrace_tolerance"});
    sc.ramps.min_change_fraction = r.number("min_change_fraction", sc.ramps.min_change_fraction);
    sc.ramps.window = r.number("window_s", sc.ramps.window);
    sc.ramps.gap = r.number("gap_s", sc.ramps.gap);
    sc.ramps.retrace_tolerance = r.number("retrace_tolerance", sc.ramps.retrace_tolerance);
    require(sc.ramps.min_change_fraction > 0.0 && sc.ramps.min_change_fraction <= 1.0,
            r.at("min_change_fraction"), "must lie in (0, 1]");
    require(sc.ramps.window >= sc.dt, r.at("window_s"), "must be at least dt");
    require(sc.ramps.gap >= 0.0, r.at("gap_s"), "must be non-negative");
  }

  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace windvar
