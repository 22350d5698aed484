#include "coopsim/instrument.hpp"

#include <cmath>
#include <stdexcept>

namespace coopsim {

namespace {

constexpr double kFwhmToSigma = 0.42466090014400953;  // 1 / (2 sqrt(2 ln 2))

std::vector<double> gaussian_kernel(double fwhm, double h) {
  const double sigma = fwhm * kFwhmToSigma;
  const long half = std::lround(std::ceil(5.0 * sigma / h));
  std::vector<double> k(std::size_t(2 * half) + 1);
  double sum = 0.0;
  for (long i = -half; i <= half; ++i) {
    const double x = double(i) * h / sigma;
    const double v = std::exp(-0.5 * x * x);
    k[std::size_t(i + half)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

// numpy-style mirror: no edge repeat
long fold_index(long i, long n, EdgeMode mode) {
  if (i >= 0 && i < n) return i;
  if (mode == EdgeMode::Zero) return -1;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

}  // namespace

long kernel_half_width(const IrfModel& irf, double h) {
  return std::lround(std::ceil(5.0 * irf.fwhm * kFwhmToSigma / h));
}

Grid convolve_grid(const Grid& tau, const Grid& values, const IrfModel& irf, EdgeMode mode) {
  if (!(irf.fwhm > 0.0)) throw std::invalid_argument("IRF width must be positive");
  const double h = grid_spacing(tau, "convolution grid");
  if (h > irf.fwhm / 10.0 * (1.0 + 1e-9))
    throw std::invalid_argument("convolution grid is too coarse for the IRF width");
  if (values.size() != tau.size())
    throw std::invalid_argument("convolution: grid and values differ in length");

  const std::vector<double> kernel = gaussian_kernel(irf.fwhm, h);
  const long half = (long(kernel.size()) - 1) / 2;
  const long n = long(values.size());
  Grid out = Grid::Zero(n);
  for (long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long j = -half; j <= half; ++j) {
      const long src = fold_index(i + j, n, mode);
      if (src >= 0) acc += kernel[std::size_t(j + half)] * values[src];
    }
    out[i] = acc;
  }
  return out;
}

CorrelationTrace convolve(const CorrelationTrace& trace, const IrfModel& irf, EdgeMode mode) {
  CorrelationTrace out = trace;
  out.values = convolve_grid(trace.tau, trace.values, irf, mode);
  return out;
}

PulsedHistogram convolve(const PulsedHistogram& hist, const IrfModel& irf) {
  PulsedHistogram out = hist;
  out.values = convolve_grid(hist.tau, hist.values, irf, EdgeMode::Zero);
  return out;
}

long long poisson_draw(double mean, std::mt19937_64& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson mean must be finite and nonnegative");
  const auto uniform01 = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };

  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    // Knuth product method
    const double limit = std::exp(-mean);
    long long k = 0;
    double prod = 1.0;
    do {
      prod *= uniform01();
      ++k;
    } while (prod > limit);
    return k - 1;
  }

  // transformed rejection with squeeze (Hormann)
  const double mu = mean;
  const double b = 0.931 + 2.53 * std::sqrt(mu);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mu);
  for (;;) {
    const double u = uniform01() - 0.5;
    const double v = uniform01();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mu + 0.43);
    if (us >= 0.07 && v <= v_r) return (long long)k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * log_mu - mu - std::lgamma(k + 1.0))
      return (long long)k;
  }
}

std::vector<long long> sample_counts(const Grid& values, long long total_counts,
                                     std::uint64_t seed) {
  if (total_counts <= 0) throw std::invalid_argument("total counts must be positive");
  if ((values < 0.0).any())
    throw std::invalid_argument("cannot sample counts from negative expectations");
  const double sum = values.sum();
  if (!(sum > 0.0)) throw NumericalError("cannot sample counts: expectation sums to zero");

  std::mt19937_64 rng(seed);
  std::vector<long long> out(std::size_t(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i)
    out[std::size_t(i)] = poisson_draw(double(total_counts) * values[i] / sum, rng);
  return out;
}

Histogram sample_histogram(const CorrelationTrace& trace, long long total_counts,
                           std::uint64_t seed) {
  const std::vector<long long> counts = sample_counts(trace.values, total_counts, seed);
  Histogram h;
  h.tau = trace.tau;
  h.counts = Grid(trace.tau.size());
  for (Eigen::Index i = 0; i < h.counts.size(); ++i) h.counts[i] = double(counts[std::size_t(i)]);
  return h;
}

}  // namespace coopsim
