#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windvar/events.hpp"
#include "windvar/spectra.hpp"

namespace windvar {

struct AnalyzeSettings {
  std::optional<std::size_t> segment;  // default: min(256, largest power of two <= n / 2)
  double overlap = 0.5;
  RampSettings ramps;
  std::optional<double> capacity;  // default: max |value|, or 1 for an all-zero series
  std::string column;              // default: first value column
};

struct AnalyzeResult {
  PsdEstimate psd;
  std::vector<RampEvent> events;
  std::filesystem::path psd_file;
  std::filesystem::path events_file;
};

/// Welch PSD and ramp classification of one column of a `time_s,...` CSV.
/// Writes <stem>_psd.csv and <stem>_events.csv next to the input.
AnalyzeResult analyze_csv(const std::filesystem::path& input, const AnalyzeSettings& settings);

}  // namespace windvar
