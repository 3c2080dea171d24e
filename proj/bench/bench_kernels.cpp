// Serial vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <random>

#include "windvar/kernels.hpp"
#include "windvar/spectra.hpp"

using namespace windvar;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_ColorSpectra(benchmark::State& state) {
  const auto psd = SpectralModel::two_peak(10.0, 4.0, 1.0);
  const CoherenceModel coh;
  std::vector<Position> pos;
  for (int i = 0; i < state.range(1); ++i) pos.push_back({300.0 * (i % 8), 300.0 * (i / 8)});
  const kernels::ColoringProblem p{&psd, &coh, pos, 1u << 13, 1.0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::color_spectra(p, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kernels::synthesis_bins(p.samples)));
}
BENCHMARK(BM_ColorSpectra)->ArgsProduct({{0, 1}, {16, 64}})->Unit(benchmark::kMillisecond);

void BM_WelchAuto(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  std::vector<double> x(1u << 20);
  for (double& v : x) v = nd(gen);
  const auto plan = kernels::plan_segments(x.size(), 1024, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::welch_auto(x, plan, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.count));
}
BENCHMARK(BM_WelchAuto)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_StepFleet(benchmark::State& state) {
  const std::size_t m = 4096;
  const PowerCurve curve;
  std::vector<const PowerCurve*> curves(m, &curve);
  std::vector<TurbineState> states(m);
  std::vector<double> wind(m), power(m), available(m);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 24.0);
  for (double& v : wind) v = u(gen);
  for (auto _ : state) {
    kernels::step_fleet(states, curves, wind, 1.0, 600.0, power, available, exec_of(state));
    benchmark::DoNotOptimize(power.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}
BENCHMARK(BM_StepFleet)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
