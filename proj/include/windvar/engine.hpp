#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windvar/dispatch.hpp"
#include "windvar/events.hpp"
#include "windvar/exec.hpp"
#include "windvar/fleet.hpp"
#include "windvar/scenario.hpp"
#include "windvar/windgen.hpp"

namespace windvar {

struct SagOutcome {
  SagSpec sag;
  double lost_mw = 0.0;  // output of the tripped turbines just before the sag
};

struct SimulationResult {
  bool replay = false;
  double installed_capacity = 0.0;

  WindField wind;  // synthesized point wind
  std::vector<std::string> turbine_ids;
  std::vector<TimeSeries> turbine_power;
  PoiSeries poi;

  /// Replay mode only: one scripted series per segment, in file order.
  std::vector<TimeSeries> scripted_segments;

  std::vector<RampEvent> events;
  std::vector<CurtailmentRecord> curtailment;
  std::vector<OverResponse> over_response;
  std::vector<SagOutcome> sags;
};

/// Runs the scenario timeline: synthesize wind, rotor-filter it per turbine,
/// overlay storm gusts, then per step inject sags, advance turbines and apply
/// dispatch; finally aggregate, classify ramps and record curtailment.
/// Output is identical for Exec::serial and Exec::parallel at any thread count.
SimulationResult simulate(const Scenario& scenario, Exec exec = Exec::parallel);

/// Names of the files write_outputs produces for this result.
std::vector<std::string> output_files(const SimulationResult& result, bool plots);

/// Writes the CSV reports (and SVG charts when `plots`) into `dir`.
void write_outputs(const SimulationResult& result, const std::filesystem::path& dir, bool plots);

}  // namespace windvar
