// windvar: scenario runner and offline series analysis.
//
//   windvar run <scenario.json> [--out DIR] [--plots] [--seed N] [--threads N]
//   windvar analyze <series.csv> [--segment N] [--threshold F] ...
//
// Exit codes: 0 ok, 1 other failure, 2 schema/input violation, 3 numerical failure.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "windvar/analyze.hpp"
#include "windvar/engine.hpp"
#include "windvar/errors.hpp"
#include "windvar/scenario.hpp"

namespace {

int report(const char* stage, const std::exception& e, int code) {
  std::cerr << "windvar " << stage << ": " << e.what() << '\n';
  return code;
}

template <class F>
int guarded(const char* stage, F&& body) {
  try {
    return body();
  } catch (const windvar::NumericalError& e) {
    return report(stage, e, 3);
  } catch (const windvar::ConfigError& e) {
    return report(stage, e, 2);
  } catch (const windvar::InputError& e) {
    return report(stage, e, 2);
  } catch (const std::exception& e) {
    return report(stage, e, 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wind-fleet variability simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  bool plots = false;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write CSV reports");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir in the scenario)");
  run->add_flag("--plots", plots, "Also write SVG charts");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--threads", threads, "OpenMP threads; 1 runs the serial kernels, 0 = default")
      ->check(CLI::NonNegativeNumber);

  std::string csv_path;
  windvar::AnalyzeSettings settings;
  std::size_t segment = 0;
  double capacity = 0.0;
  auto* analyze = app.add_subcommand("analyze", "Welch PSD and ramp events of a CSV series");
  analyze->add_option("csv", csv_path, "CSV with a time_s column")->required();
  analyze->add_option("--segment", segment, "Welch segment length (power of two)");
  analyze->add_option("--overlap", settings.overlap, "Welch overlap fraction")->capture_default_str();
  analyze->add_option("--threshold", settings.ramps.min_change_fraction,
                      "Ramp threshold as a fraction of capacity")->capture_default_str();
  analyze->add_option("--window", settings.ramps.window, "Ramp completion window, s")->capture_default_str();
  analyze->add_option("--gap", settings.ramps.gap, "Lull/gust pairing gap, s")->capture_default_str();
  analyze->add_option("--capacity", capacity, "Capacity for the ramp threshold (default: max |value|)");
  analyze->add_option("--column", settings.column, "Value column (default: first)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*run) {
    return guarded("run", [&] {
      auto sc = windvar::load_scenario(scenario_path);
      if (seed) sc.seed = *seed;
      auto exec = windvar::Exec::parallel;
      if (threads == 1) exec = windvar::Exec::serial;
      if (threads > 1) omp_set_num_threads(threads);

      const auto result = windvar::simulate(sc, exec);
      const std::filesystem::path dir = out_dir.empty() ? sc.output_dir : out_dir;
      windvar::write_outputs(result, dir, plots);
      for (const auto& f : windvar::output_files(result, plots)) {
        std::cout << (dir / f).string() << '\n';
      }
      return 0;
    });
  }

  return guarded("analyze", [&] {
    if (segment > 0) settings.segment = segment;
    if (capacity > 0.0) settings.capacity = capacity;
    const auto res = windvar::analyze_csv(csv_path, settings);
    std::cout << res.psd_file.string() << '\n' << res.events_file.string() << '\n';
    return 0;
  });
}
