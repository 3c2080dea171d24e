#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "windvar/errors.hpp"
#include "windvar/spectra.hpp"

using namespace windvar;

namespace {

TimeSeries white_noise(std::size_t n, std::uint64_t seed, double sd = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, sd);
  std::vector<double> v(n);
  for (double& x : v) x = nd(gen);
  return {1.0, 0.0, std::move(v)};
}

// Trapezoid rule on a log-spaced grid, written independently of the model code.
double integrate_log_grid(const SpectralModel& m, double f_lo, double f_hi, std::size_t n) {
  double sum = 0.0;
  const double a = std::log(f_lo), b = std::log(f_hi);
  double prev_f = f_lo, prev_s = evaluate_psd(m, f_lo);
  for (std::size_t i = 1; i <= n; ++i) {
    const double f = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
    const double s = evaluate_psd(m, f);
    sum += 0.5 * (s + prev_s) * (f - prev_f);
    prev_f = f;
    prev_s = s;
  }
  return sum;
}

}  // namespace

TEST(Psd, TwoPeakModelHasGap) {
  const auto m = SpectralModel::two_peak(10.0, 4.0, 1.0);
  const double f1 = 1.0 / (4.0 * 86400.0), f2 = 1.0 / 60.0;
  const double gap = std::sqrt(f1 * f2);
  EXPECT_GT(evaluate_psd(m, f1), evaluate_psd(m, gap));
  EXPECT_GT(evaluate_psd(m, f2), evaluate_psd(m, gap));
}

TEST(Psd, ZeroVarianceIsZero) {
  const auto m = SpectralModel::two_peak(10.0, 0.0, 0.0);
  for (double f : {1e-7, 1e-3, 0.1, 10.0}) EXPECT_EQ(evaluate_psd(m, f), 0.0);
}

TEST(Psd, SingleComponentIntegratesToVariance) {
  SpectralModel m;
  m.components = {{0.01, 1.0, 0.5}};
  EXPECT_NEAR(integrate_log_grid(m, 1e-6, 100.0, 200000), 1.0, 0.01);
}

TEST(Psd, RejectsNonPositiveFrequency) {
  const auto m = SpectralModel::two_peak(10.0, 1.0, 1.0);
  EXPECT_THROW(evaluate_psd(m, 0.0), DomainError);
  EXPECT_THROW(evaluate_psd(m, -1.0), DomainError);
}

TEST(Psd, NonNegativeOverRandomModels) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> lf(-14.0, 2.0), var(0.0, 10.0), w(0.05, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    SpectralModel m;
    for (int c = 0; c < 3; ++c) m.components.push_back({std::exp(lf(gen)), var(gen), w(gen)});
    for (int k = 0; k < 50; ++k) {
      const double s = evaluate_psd(m, std::exp(lf(gen)));
      ASSERT_GE(s, 0.0);
      ASSERT_TRUE(std::isfinite(s));
    }
  }
}

TEST(Coherence, ClosedFormAndLimits) {
  CoherenceModel c{10.0, 10.0};
  EXPECT_NEAR(evaluate_coherence(c, 0.1, 100.0), std::exp(-10.0), 1e-15);
  EXPECT_NEAR(evaluate_coherence(c, 0.01, 100.0), std::exp(-1.0), 1e-12);
  EXPECT_EQ(evaluate_coherence(c, 0.3, 0.0), 1.0);
  EXPECT_EQ(evaluate_coherence(c, 0.0, 500.0), 1.0);
  CoherenceModel none{0.0, 10.0};
  EXPECT_EQ(evaluate_coherence(none, 0.2, 5000.0), 1.0);
  EXPECT_THROW(evaluate_coherence(c, -0.1, 1.0), DomainError);
  EXPECT_THROW(evaluate_coherence(c, 0.1, -1.0), DomainError);
}

TEST(Coherence, StrictlyDecreasingInFrequencyTimesDistance) {
  CoherenceModel c{7.0, 12.0};
  double prev = 1.0;
  for (int i = 1; i < 200; ++i) {
    const double g = evaluate_coherence(c, 1e-4 * i, 100.0);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Welch, ToneLandsInItsBin) {
  const std::size_t n = 1 << 14;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(2.0 * std::numbers::pi * 0.05 * static_cast<double>(i));
  const auto est = estimate_psd({1.0, 0.0, v}, 1024);
  const std::size_t k = est.nearest_bin(0.05);
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < est.densities.size(); ++i) {
    if (est.densities[i] > est.densities[argmax]) argmax = i;
  }
  EXPECT_EQ(argmax, k);
  // A Hann window spreads a tone over its bin and the two neighbours.
  double near = 0.0, total = 0.0;
  for (std::size_t i = 0; i < est.densities.size(); ++i) {
    total += est.densities[i];
    if (i + 1 >= k && i <= k + 1) near += est.densities[i];
  }
  EXPECT_GE(near / total, 0.9);
}

TEST(Welch, ConstantSeriesHasZeroDensity) {
  const auto est = estimate_psd({1.0, 0.0, std::vector<double>(4096, 3.7)}, 256);
  for (double d : est.densities) EXPECT_EQ(d, 0.0);
}

TEST(Welch, WhiteNoiseParseval) {
  const auto est = estimate_psd(white_noise(1 << 16, 42), 1024);
  EXPECT_NEAR(est.total_power(), 1.0, 0.05);
}

TEST(Welch, ParsevalOnColouredSeries) {
  // Random walk plus noise: detrended variance vs summed density.
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto x = white_noise(1 << 15, seed);
    double acc = 0.0;
    for (double& v : x.values) {
      acc = 0.95 * acc + v;
      v = acc;
    }
    const auto est = estimate_psd(x, 1 << 12);
    // Detrend by the mean of each segment-length block to match per-segment mean removal.
    const std::size_t L = 1 << 12;
    double var = 0.0;
    std::size_t blocks = 0;
    for (std::size_t s = 0; s + L <= x.size(); s += L, ++blocks) {
      var += variance(std::span<const double>(x.values).subspan(s, L));
    }
    var /= static_cast<double>(blocks);
    EXPECT_NEAR(est.total_power() / var, 1.0, 0.05) << "seed " << seed;
  }
}

TEST(Welch, RejectsBadArguments) {
  const auto x = white_noise(1000, 1);
  EXPECT_THROW(estimate_psd(x, 300), InputError);
  EXPECT_THROW(estimate_psd(x, 1024), InputError);
  EXPECT_THROW(estimate_psd(x, 256, 1.0), InputError);
}

TEST(Welch, SerialAndParallelAgree) {
  const auto x = white_noise(1 << 15, 9);
  const auto a = estimate_psd(x, 512, 0.5, Exec::serial);
  const auto b = estimate_psd(x, 512, 0.5, Exec::parallel);
  EXPECT_EQ(a.densities, b.densities);
}

TEST(EstimatedCoherence, SelfCoherenceIsOne) {
  const auto x = white_noise(1 << 14, 3);
  for (const auto& bin : estimate_coherence(x, x, 256)) EXPECT_NEAR(bin.coherence, 1.0, 1e-12);
}

TEST(EstimatedCoherence, IndependentNoiseNearChanceLevel) {
  // 64 segments at 50% overlap need 65 * L / 2 samples.
  const std::size_t L = 256, n = 65 * L / 2;
  double total = 0.0;
  int seeds = 0;
  for (std::uint64_t s = 0; s < 10; ++s, ++seeds) {
    const auto c = estimate_coherence(white_noise(n, 100 + s), white_noise(n, 200 + s), L);
    double m = 0.0;
    for (const auto& b : c) m += b.coherence;
    total += m / static_cast<double>(c.size());
  }
  EXPECT_LE(total / seeds, 0.1);
}

TEST(EstimatedCoherence, Symmetric) {
  const auto a = white_noise(1 << 13, 1);
  auto b = white_noise(1 << 13, 2);
  for (std::size_t i = 0; i < b.size(); ++i) b.values[i] += 0.5 * a.values[i];
  const auto ab = estimate_coherence(a, b, 256);
  const auto ba = estimate_coherence(b, a, 256);
  ASSERT_EQ(ab.size(), ba.size());
  for (std::size_t i = 0; i < ab.size(); ++i) EXPECT_EQ(ab[i].coherence, ba[i].coherence);
}

TEST(EstimatedCoherence, NeedsEightSegments) {
  const auto a = white_noise(1024, 1);
  EXPECT_THROW(estimate_coherence(a, a, 256), InputError);
}
