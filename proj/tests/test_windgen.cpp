#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "windvar/errors.hpp"
#include "windvar/windgen.hpp"

using namespace windvar;

namespace {

double trapezoid_psd(const SpectralModel& m, double f_lo, double f_hi, std::size_t n) {
  double sum = 0.0;
  const double h = (f_hi - f_lo) / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * evaluate_psd(m, f_lo + h * static_cast<double>(i));
  }
  return sum * h;
}

}  // namespace

TEST(Synthesis, CoincidentPointsAreIdentical) {
  const auto psd = SpectralModel::two_peak(10.0, 1.0, 1.0);
  const CoherenceModel coh{10.0, 10.0};
  const std::vector<Position> pos{{5.0, 5.0}, {5.0, 5.0}, {300.0, 0.0}};
  const auto f = synthesize_field(psd, coh, pos, 4096.0, 1.0, 3);
  EXPECT_EQ(f.series[0].values, f.series[1].values);
  EXPECT_NE(f.series[0].values, f.series[2].values);
}

TEST(Synthesis, SinglePointVarianceMatchesResolvableBand) {
  // Thirty days at 10 s resolve both the synoptic and the turbulence peak.
  const auto psd = SpectralModel::two_peak(10.0, 4.0, 1.0);
  const CoherenceModel coh;
  const std::vector<Position> pos{{0.0, 0.0}};
  const std::size_t n = 1u << 18;
  const double dt = 10.0;
  const auto rows = synthesize_fluctuations(psd, coh, pos, n, dt, 11);
  const double target = trapezoid_psd(psd, 1.0 / (static_cast<double>(n) * dt), 0.5 / dt, 1u << 22);
  EXPECT_NEAR(variance(rows[0]) / target, 1.0, 0.10);
}

TEST(Synthesis, VarianceIsTheDiscreteSpectrumSum) {
  const auto psd = SpectralModel::two_peak(10.0, 4.0, 1.0);
  const std::vector<Position> pos{{0.0, 0.0}};
  for (std::size_t n : {1001u, 4096u}) {
    const double dt = 1.0, df = 1.0 / (static_cast<double>(n) * dt);
    double sum = 0.0;
    for (std::size_t k = 1; k <= (n - 1) / 2; ++k) sum += evaluate_psd(psd, static_cast<double>(k) * df) * df;
    const auto rows = synthesize_fluctuations(psd, {}, pos, n, dt, 2);
    EXPECT_NEAR(variance(rows[0]) / sum, 1.0, 1e-9);
    EXPECT_NEAR(mean(rows[0]), 0.0, 1e-12);
  }
}

TEST(Synthesis, FarApartPointsAreIncoherent) {
  const SpectralModel psd{{{0.01, 1.0, 1.0}}, 10.0};
  const CoherenceModel coh{50.0, 10.0};
  const std::vector<Position> pos{{0.0, 0.0}, {5000.0, 0.0}};
  const auto f = synthesize_field(psd, coh, pos, 1u << 18, 1.0, 5);
  const auto c = estimate_coherence(f.series[0], f.series[1], 1024);
  const double df = 1.0 / 1024.0;
  const auto& bin = c[static_cast<std::size_t>(std::lround(0.01 / df)) - 1];
  EXPECT_NEAR(bin.frequency, 0.01, df);
  EXPECT_NEAR(std::sqrt(bin.coherence), evaluate_coherence(coh, bin.frequency, 5000.0), 0.1);
}

TEST(Synthesis, CoherenceRoundTripAtEveryBin) {
  const SpectralModel psd{{{0.02, 1.0, 1.5}}, 10.0};
  const CoherenceModel coh{10.0, 10.0};
  const std::vector<Position> pos{{0.0, 0.0}, {100.0, 0.0}};
  const auto f = synthesize_field(psd, coh, pos, 1u << 18, 1.0, 21);
  const auto est = estimate_coherence(f.series[0], f.series[1], 1024);
  double worst = 0.0;
  for (const auto& b : est) {
    const double g = evaluate_coherence(coh, b.frequency, 100.0);
    worst = std::max(worst, std::abs(b.coherence - g * g));
  }
  EXPECT_LE(worst, 0.1);
}

TEST(Synthesis, CoherenceFallsWithDistance) {
  const SpectralModel psd{{{0.02, 1.0, 1.5}}, 10.0};
  const CoherenceModel coh{10.0, 10.0};
  const std::vector<Position> pos{{0.0, 0.0}, {60.0, 0.0}, {180.0, 0.0}};
  const auto f = synthesize_field(psd, coh, pos, 1u << 17, 1.0, 4);
  const auto near = estimate_coherence(f.series[0], f.series[1], 512);
  const auto far = estimate_coherence(f.series[0], f.series[2], 512);
  for (std::size_t k = 0; k < near.size(); ++k) EXPECT_LE(far[k].coherence, near[k].coherence + 0.1);
}

TEST(Synthesis, DeterministicAcrossExecution) {
  const auto psd = SpectralModel::two_peak(9.0, 2.0, 1.5);
  const CoherenceModel coh{10.0, 9.0};
  std::vector<Position> pos;
  for (int i = 0; i < 16; ++i) pos.push_back({250.0 * (i % 4), 250.0 * (i / 4)});
  const auto a = synthesize_field(psd, coh, pos, 3000.0, 1.0, 99, Exec::serial);
  const auto b = synthesize_field(psd, coh, pos, 3000.0, 1.0, 99, Exec::parallel);
  const auto c = synthesize_field(psd, coh, pos, 3000.0, 1.0, 99, Exec::parallel);
  for (std::size_t j = 0; j < pos.size(); ++j) {
    EXPECT_EQ(a.series[j].values, b.series[j].values);
    EXPECT_EQ(b.series[j].values, c.series[j].values);
  }
  const auto d = synthesize_field(psd, coh, pos, 3000.0, 1.0, 100, Exec::serial);
  EXPECT_NE(a.series[0].values, d.series[0].values);
}

TEST(Synthesis, SpeedsNeverNegative) {
  const auto psd = SpectralModel::two_peak(3.0, 4.0, 9.0);
  const CoherenceModel coh;
  const std::vector<Position> pos{{0.0, 0.0}, {500.0, 0.0}};
  const auto f = synthesize_field(psd, coh, pos, 20000.0, 1.0, 8);
  bool clamped = false;
  for (const auto& s : f.series) {
    for (double v : s.values) {
      ASSERT_GE(v, 0.0);
      clamped |= v == 0.0;
    }
  }
  EXPECT_TRUE(clamped);
}

TEST(Synthesis, RejectsCoarseSampling) {
  const auto psd = SpectralModel::two_peak(10.0, 1.0, 1.0);
  const std::vector<Position> pos{{0.0, 0.0}};
  EXPECT_THROW(synthesize_field(psd, {}, pos, 36000.0, 60.0, 1), ConfigError);
  EXPECT_THROW(synthesize_field(psd, {}, {}, 3600.0, 1.0, 1), ConfigError);
}

TEST(Synthesis, CsvLayout) {
  const auto psd = SpectralModel::two_peak(10.0, 1.0, 1.0);
  const std::vector<Position> pos{{0.0, 0.0}, {10.0, 0.0}};
  const auto f = synthesize_field(psd, {}, pos, 4.0, 1.0, 1);
  std::ostringstream os;
  write_csv(os, f);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "time_s,pos_0,pos_1");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(RotorFilter, ZeroDiameterIsIdentity) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> nd(10.0, 1.0);
  std::vector<double> v(1000);
  for (double& x : v) x = nd(gen);
  const TimeSeries s(1.0, 0.0, v);
  EXPECT_EQ(rotor_equivalent(s, 0.0, 10.0).values, v);
}

TEST(RotorFilter, ConstantUnchanged) {
  const TimeSeries s(1.0, 0.0, std::vector<double>(777, 8.5));
  EXPECT_EQ(rotor_equivalent(s, 80.0, 10.0).values, s.values);
}

TEST(RotorFilter, FirstOrderGainOnSinusoid) {
  const std::size_t n = 10000;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 10.0 + std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 10.0);
  const auto out = rotor_equivalent({1.0, 0.0, v}, 80.0, 10.0);
  const double amp_in = std::sqrt(2.0 * variance(v));
  const double amp_out = std::sqrt(2.0 * variance(out.values));
  const double expected = 1.0 / std::sqrt(1.0 + std::pow(2.0 * std::numbers::pi * 8.0 / 10.0, 2));
  EXPECT_NEAR(amp_out / amp_in, expected, 0.05 * expected);
  EXPECT_NEAR(mean(out.values), 10.0, 1e-9);
}

TEST(RotorFilter, NeverIncreasesVariance) {
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<int> len(16, 3000);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(gen)));
    double acc = 10.0;
    for (double& x : v) x = acc += nd(gen);
    const TimeSeries s(0.5, 0.0, v);
    const auto out = rotor_equivalent(s, 40.0 + trial, 8.0);
    EXPECT_LE(variance(out.values), variance(v) * (1.0 + 1e-12));
  }
}

TEST(RotorFilter, RejectsBadArguments) {
  const TimeSeries s(1.0, 0.0, std::vector<double>(10, 1.0));
  EXPECT_THROW(rotor_equivalent(s, -1.0, 10.0), DomainError);
  EXPECT_THROW(rotor_equivalent(s, 80.0, 0.0), DomainError);
}
