#include "windvar/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "windvar/errors.hpp"
#include "windvar/fft.hpp"
#include "windvar/rng.hpp"

namespace windvar::kernels {

namespace {

// Segments per partial sum in the Welch kernels. Fixed so that the
// association of the floating-point sums does not depend on threading.
constexpr std::size_t kSegmentBlock = 16;

// Parallel loops over fewer items than this stay on one thread.
constexpr std::size_t kMinParallelTurbines = 64;

struct BinScratch {
  std::vector<double> factor;
  std::vector<Complex> phases;
};

// Fills column k of every coefficient row. Returns false if the coherence
// matrix at this bin could not be factored.
bool color_bin(const ColoringProblem& p, std::span<const double> distances, std::size_t k,
               BinScratch& scratch, std::vector<Complex>& coeffs) {
  const std::size_t m = p.positions.size();
  const std::size_t row = p.samples / 2 + 1;
  const double df = 1.0 / (static_cast<double>(p.samples) * p.dt);
  const double f = static_cast<double>(k) * df;
  const double amp = std::sqrt(2.0 * evaluate_psd(*p.psd, f) * df);

  for (std::size_t l = 0; l < m; ++l) {
    const double theta = 2.0 * std::numbers::pi * rng::uniform01(p.seed, l, k);
    scratch.phases[l] = Complex(std::cos(theta), std::sin(theta));
  }

  if (m == 1) {
    coeffs[k] = 0.5 * amp * scratch.phases[0];
    return true;
  }

  // Same closed form as evaluate_coherence, without its argument checks, so
  // nothing throws inside a parallel region; bad geometry surfaces as a
  // failed factorization instead.
  const double decay = p.coherence->decay_constant * f / p.coherence->mean_speed;
  auto& g = scratch.factor;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l < j; ++l) {
      const double d = distances[j * m + l];
      const double c = d == 0.0 ? 1.0 : std::exp(-decay * d);
      g[j * m + l] = c;
      g[l * m + j] = c;
    }
    g[j * m + j] = 1.0;
  }
  if (!psd_cholesky(g, m, 1e-10 * static_cast<double>(m))) return false;

  for (std::size_t j = 0; j < m; ++j) {
    Complex acc(0.0, 0.0);
    for (std::size_t l = 0; l <= j; ++l) acc += g[j * m + l] * scratch.phases[l];
    coeffs[j * row + k] = 0.5 * amp * acc;
  }
  return true;
}

std::vector<double> pair_distances(std::span<const Position> pos) {
  const std::size_t m = pos.size();
  std::vector<double> d(m * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l < m; ++l) d[j * m + l] = distance(pos[j], pos[l]);
  }
  return d;
}

[[noreturn]] void throw_factorization(double f) {
  std::ostringstream os;
  os << "coherence matrix is not positive semidefinite at f = " << f << " Hz";
  throw NumericalError(os.str());
}

// Windowed, mean-removed spectrum of one segment.
void segment_spectrum(std::span<const double> x, std::span<const double> window,
                      const RealFft& fft, std::vector<double>& buf,
                      std::vector<Complex>& spec) {
  const std::size_t n = window.size();
  // Offsets from the first sample keep a constant segment exactly zero.
  const double x0 = x[0];
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m += x[i] - x0;
  m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = ((x[i] - x0) - m) * window[i];
  fft.forward(buf, spec);
}

}  // namespace

bool psd_cholesky(std::span<double> a, std::size_t n, double zero_pivot) {
  double max_diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) max_diag = std::max(max_diag, a[j * n + j]);
  const double negative_tol = 1e-6 * std::max(max_diag, 1.0);

  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!std::isfinite(d) || d < -negative_tol) return false;

    if (d <= zero_pivot) {
      a[j * n + j] = 0.0;
      for (std::size_t i = j + 1; i < n; ++i) a[i * n + j] = 0.0;
    } else {
      const double ljj = std::sqrt(d);
      a[j * n + j] = ljj;
      for (std::size_t i = j + 1; i < n; ++i) {
        double s = a[i * n + j];
        for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
        a[i * n + j] = s / ljj;
      }
    }
    for (std::size_t i = 0; i < j; ++i) a[i * n + j] = 0.0;
  }
  return true;
}

std::vector<Complex> color_spectra(const ColoringProblem& p, Exec exec) {
  const std::size_t m = p.positions.size();
  const std::size_t row = p.samples / 2 + 1;
  const std::size_t kmax = synthesis_bins(p.samples);
  std::vector<Complex> coeffs(m * row, Complex(0.0, 0.0));
  const auto distances = pair_distances(p.positions);

  // Lowest failing bin, reported after the loop so both paths throw the same message.
  std::size_t failed = kmax + 1;

  if (exec == Exec::serial) {
    BinScratch scratch{std::vector<double>(m * m), std::vector<Complex>(m)};
    for (std::size_t k = 1; k <= kmax; ++k) {
      if (!color_bin(p, distances, k, scratch, coeffs)) {
        failed = k;
        break;
      }
    }
  } else {
#pragma omp parallel
    {
      BinScratch scratch{std::vector<double>(m * m), std::vector<Complex>(m)};
      std::size_t local_failed = kmax + 1;
#pragma omp for schedule(static)
      for (std::size_t k = 1; k <= kmax; ++k) {
        if (k < local_failed && !color_bin(p, distances, k, scratch, coeffs)) local_failed = k;
      }
#pragma omp critical(windvar_color_failed)
      failed = std::min(failed, local_failed);
    }
  }

  if (failed <= kmax) {
    throw_factorization(static_cast<double>(failed) / (static_cast<double>(p.samples) * p.dt));
  }
  return coeffs;
}

std::vector<std::vector<double>> inverse_rows(std::vector<Complex>& coeffs, std::size_t rows,
                                              std::size_t samples, Exec exec) {
  const std::size_t row = samples / 2 + 1;
  if (coeffs.size() != rows * row) throw InputError("coefficient matrix shape mismatch");
  std::vector<std::vector<double>> out(rows, std::vector<double>(samples));
  const RealFft fft(samples);

  auto one = [&](std::size_t r) {
    fft.inverse(std::span<Complex>(coeffs.data() + r * row, row), out[r]);
  };

  if (exec == Exec::serial) {
    for (std::size_t r = 0; r < rows; ++r) one(r);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t r = 0; r < rows; ++r) one(r);
  }
  return out;
}

SegmentPlan plan_segments(std::size_t samples, std::size_t length, double overlap_fraction) {
  if (length < 2 || (length & (length - 1)) != 0) {
    throw InputError("segment length must be a power of two >= 2");
  }
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
    throw InputError("overlap fraction must lie in [0, 1)");
  }
  if (samples < length) throw InputError("series shorter than one segment");
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(length) * (1.0 - overlap_fraction))));
  return {length, hop, 1 + (samples - length) / hop};
}

std::vector<double> hann(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t i = 0; i < length; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(length)));
  }
  return w;
}

std::vector<double> welch_auto(std::span<const double> x, const SegmentPlan& plan, Exec exec) {
  const std::size_t bins = plan.length / 2 + 1;
  const std::size_t blocks = (plan.count + kSegmentBlock - 1) / kSegmentBlock;
  const auto window = hann(plan.length);
  const RealFft fft(plan.length);
  std::vector<double> partial(blocks * bins, 0.0);

  auto block_sum = [&](std::size_t b) {
    std::vector<double> buf(plan.length);
    std::vector<Complex> spec(bins);
    double* acc = partial.data() + b * bins;
    const std::size_t last = std::min(plan.count, (b + 1) * kSegmentBlock);
    for (std::size_t s = b * kSegmentBlock; s < last; ++s) {
      segment_spectrum(x.subspan(s * plan.hop, plan.length), window, fft, buf, spec);
      for (std::size_t k = 0; k < bins; ++k) acc[k] += std::norm(spec[k]);
    }
  };

  if (exec == Exec::serial) {
    for (std::size_t b = 0; b < blocks; ++b) block_sum(b);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t b = 0; b < blocks; ++b) block_sum(b);
  }

  std::vector<double> total(bins, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t k = 0; k < bins; ++k) total[k] += partial[b * bins + k];
  }
  return total;
}

CrossSums welch_cross(std::span<const double> a, std::span<const double> b,
                      const SegmentPlan& plan, Exec exec) {
  if (a.size() != b.size()) throw InputError("cross spectrum inputs differ in length");
  const std::size_t bins = plan.length / 2 + 1;
  const std::size_t blocks = (plan.count + kSegmentBlock - 1) / kSegmentBlock;
  const auto window = hann(plan.length);
  const RealFft fft(plan.length);
  CrossSums partial{std::vector<double>(blocks * bins, 0.0), std::vector<double>(blocks * bins, 0.0),
                    std::vector<Complex>(blocks * bins, Complex(0.0, 0.0))};

  auto block_sum = [&](std::size_t blk) {
    std::vector<double> buf(plan.length);
    std::vector<Complex> sa(bins);
    std::vector<Complex> sb(bins);
    const std::size_t off = blk * bins;
    const std::size_t last = std::min(plan.count, (blk + 1) * kSegmentBlock);
    for (std::size_t s = blk * kSegmentBlock; s < last; ++s) {
      segment_spectrum(a.subspan(s * plan.hop, plan.length), window, fft, buf, sa);
      segment_spectrum(b.subspan(s * plan.hop, plan.length), window, fft, buf, sb);
      for (std::size_t k = 0; k < bins; ++k) {
        const double ar = sa[k].real(), ai = sa[k].imag();
        const double br = sb[k].real(), bi = sb[k].imag();
        partial.aa[off + k] += ar * ar + ai * ai;
        partial.bb[off + k] += br * br + bi * bi;
        // Written out so that swapping a and b yields the exact conjugate.
        partial.ab[off + k] += Complex(ar * br + ai * bi, ai * br - ar * bi);
      }
    }
  };

  if (exec == Exec::serial) {
    for (std::size_t blk = 0; blk < blocks; ++blk) block_sum(blk);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t blk = 0; blk < blocks; ++blk) block_sum(blk);
  }

  CrossSums total{std::vector<double>(bins, 0.0), std::vector<double>(bins, 0.0),
                  std::vector<Complex>(bins, Complex(0.0, 0.0))};
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    for (std::size_t k = 0; k < bins; ++k) {
      total.aa[k] += partial.aa[blk * bins + k];
      total.bb[k] += partial.bb[blk * bins + k];
      total.ab[k] += partial.ab[blk * bins + k];
    }
  }
  return total;
}

void step_fleet(std::span<TurbineState> states, std::span<const PowerCurve* const> curves,
                std::span<const double> wind, double dt, double reconnect_delay,
                std::span<double> power, std::span<double> available, Exec exec) {
  const std::size_t n = states.size();
  auto one = [&](std::size_t i) {
    const auto r = step_turbine(states[i], *curves[i], wind[i], dt, reconnect_delay);
    states[i] = r.state;
    power[i] = r.power;
    available[i] = available_power(r.state, *curves[i], wind[i]);
  };

  if (exec == Exec::serial || n < kMinParallelTurbines) {
    for (std::size_t i = 0; i < n; ++i) one(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) one(i);
  }
}

}  // namespace windvar::kernels
