#pragma once

#include "coopsim/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace coopsim {

struct IrfModel {
  double fwhm = 0.240;  // ns, Gaussian
};

enum class EdgeMode { Reflect, Zero };

Grid convolve_grid(const Grid& tau, const Grid& values, const IrfModel& irf, EdgeMode mode);
long kernel_half_width(const IrfModel& irf, double h);  // kernel points per side
CorrelationTrace convolve(const CorrelationTrace& trace, const IrfModel& irf,
                          EdgeMode mode = EdgeMode::Reflect);
PulsedHistogram convolve(const PulsedHistogram& hist, const IrfModel& irf);

// Deterministic Poisson sampler (Knuth product below mean 10, transformed
// rejection above); the standard
// library distribution is implementation-defined and would break byte-exact
// reproducibility across toolchains.
long long poisson_draw(double mean, std::mt19937_64& rng);

std::vector<long long> sample_counts(const Grid& values, long long total_counts,
                                     std::uint64_t seed);
Histogram sample_histogram(const CorrelationTrace& trace, long long total_counts,
                           std::uint64_t seed);

}  // namespace coopsim
