#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "windvar/dispatch.hpp"
#include "windvar/errors.hpp"
#include "windvar/events.hpp"
#include "windvar/fleet.hpp"
#include "windvar/spectra.hpp"

namespace windvar {

/// Scenario file violation. what() starts with the JSON path of the field.
class SchemaError : public ConfigError {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : ConfigError(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// One scripted stretch of region power, linear from start_mw to end_mw.
/// Used to replay recorded curtailment periods without simulating wind.
struct ScriptedSegment {
  double t_start = 0.0;
  std::optional<double> t_end;  // open-ended segments run to the scenario end
  double start_mw = 0.0;
  double end_mw = 0.0;
};

struct Scenario {
  double duration = 3600.0;  // s
  double dt = 1.0;           // s
  std::uint64_t seed = 1;

  SpectralModel spectrum = SpectralModel::two_peak(10.0, 4.0, 1.0);
  /// Optional piecewise-linear mean wind (t, m/s) replacing spectrum.mean_speed.
  std::vector<std::pair<double, double>> mean_speed_profile;
  bool rotor_filter = true;
  CoherenceModel coherence;

  FleetTopology fleet;
  double reconnect_delay = kDefaultReconnectDelay;

  DispatchPolicy policy = DispatchPolicy::plant_level;
  double min_off_time = kDefaultMinOffTime;
  std::vector<CurtailmentOrder> orders;  // sorted by t_start

  std::vector<SagSpec> sags;
  std::vector<StormFront> storms;
  RampSettings ramps;

  std::vector<ScriptedSegment> scripted_region;
  std::string output_dir = "out";

  bool replay() const { return !scripted_region.empty(); }
  /// Mean wind at time t.
  double mean_speed_at(double t) const;

  /// Cross-field checks; throws SchemaError.
  void validate() const;
};

/// Builds a scenario from parsed JSON, applying defaults for every omitted block.
Scenario parse_scenario(const nlohmann::json& doc);

/// Reads and parses a scenario file. Malformed JSON is reported as a SchemaError at "$".
Scenario load_scenario(const std::filesystem::path& path);

/// Parses "H:MM", "H:MM:SS" or a plain number of seconds.
double parse_clock(const nlohmann::json& value, const std::string& path);

}  // namespace windvar
