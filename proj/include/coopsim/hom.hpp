#pragma once

#include "coopsim/types.hpp"

namespace coopsim {

struct HomConfig {
  double delay = 12.44;               // ns, interferometer arm imbalance
  double polarization_overlap = 1.0;  // 1 = parallel, 0 = perpendicular
};

// g2_HOM(tau) = (g2(tau) + 1 - eta^2 |g1(tau)|^2) / 2 for a CW source whose
// delayed copy is statistically independent (delay >> all correlation times;
// warns on stderr when that is not satisfied by a factor of 10).
CorrelationTrace hom_cross_correlation(const CorrelationTrace& g2, const CoherenceTrace& g1,
                                       const HomConfig& cfg);

CorrelationTrace visibility(const CorrelationTrace& par, const CorrelationTrace& perp);

// Signed trapezoidal area of V(tau) over its full (symmetric) grid.
double coherence_time_window(const CorrelationTrace& v);

PulsedHistogram hom_pulsed(Model model, const EmitterParams& p, const DriveProtocol& pulse,
                           const HomConfig& cfg);

}  // namespace coopsim
