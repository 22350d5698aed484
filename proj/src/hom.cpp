#include "coopsim/hom.hpp"

#include "coopsim/correlators.hpp"
#include "coopsim/pulsed_engine.hpp"

#include <cmath>
#include <iostream>

namespace coopsim {

namespace {

void check_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a.size() != b.size() || (a.size() > 0 && (a - b).abs().maxCoeff() > 1e-9))
    throw std::invalid_argument(std::string(what) + ": traces use different delay grids");
}

void check_overlap(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("polarization overlap must lie in [0, 1]");
}

}  // namespace

CorrelationTrace hom_cross_correlation(const CorrelationTrace& g2, const CoherenceTrace& g1,
                                       const HomConfig& cfg) {
  check_same_grid(g2.tau, g1.tau, "hom_cross_correlation");
  check_overlap(cfg.polarization_overlap);
  if (!(cfg.delay > 0.0)) throw std::invalid_argument("interferometer delay must be positive");

  // coherence time estimate: first delay where |g1| has fallen to 1/e
  const Grid mag = g1.values.abs();
  double t_coh = std::abs(g1.tau[g1.tau.size() - 1]);
  bool crossed = false;
  for (Eigen::Index k = 0; k < g1.tau.size(); ++k) {
    if (g1.tau[k] >= 0.0 && mag[k] < std::exp(-1.0)) {
      t_coh = g1.tau[k];
      crossed = true;
      break;
    }
  }
  if (cfg.delay < 10.0 * t_coh || !crossed)
    std::cerr << "warning: interferometer delay " << cfg.delay
              << " ns is not long against the coherence time (~" << t_coh
              << " ns); the two arms are treated as independent\n";

  const double eta_sq = cfg.polarization_overlap * cfg.polarization_overlap;
  CorrelationTrace out;
  out.tau = g2.tau;
  out.values = 0.5 * (g2.values + 1.0 - eta_sq * g1.values.abs2());
  out.values = out.values.max(0.0);
  out.normalization = g2.normalization;
  return out;
}

CorrelationTrace visibility(const CorrelationTrace& par, const CorrelationTrace& perp) {
  check_same_grid(par.tau, perp.tau, "visibility");
  if ((perp.values <= 0.0).any())
    throw NumericalError("visibility: perpendicular trace touches zero");
  CorrelationTrace v;
  v.tau = par.tau;
  v.values = 1.0 - par.values / perp.values;
  v.normalization = Normalization::Raw;
  return v;
}

double coherence_time_window(const CorrelationTrace& v) {
  const double h = grid_spacing(v.tau, "visibility trace");
  if (std::abs(v.tau[0] + v.tau[v.tau.size() - 1]) > 1e-6 * h)
    throw std::invalid_argument("coherence_time_window: delay grid must be symmetric about zero");
  return trapezoid(v.tau, v.values);
}

PulsedHistogram hom_pulsed(Model model, const EmitterParams& p, const DriveProtocol& pulse,
                           const HomConfig& cfg) {
  if (pulse.kind != DriveProtocol::Kind::CoherentPulsed)
    throw std::invalid_argument("hom_pulsed: drive must be pulsed");
  check_overlap(cfg.polarization_overlap);
  if (std::abs(cfg.delay - pulse.period) > 1e-9 * pulse.period)
    throw ConfigError("hom delay must equal the repetition period");

  const double eta_sq = cfg.polarization_overlap * cfg.polarization_overlap;
  const PulsedSolution sol =
      solve_pulsed(model, p, pulse, 0.5 * pulse.period, 0.0025, eta_sq > 0.0);

  // One arm is delayed by a full period, so the interfering photons come from
  // consecutive pulses: the central peak mixes C0 with the uncorrelated product
  // term and the two-photon coherence, the side peaks keep the product term.
  Grid central = 0.5 * (sol.central + sol.side);
  if (eta_sq > 0.0) central -= 0.5 * eta_sq * sol.coherence_sq;
  central = central.max(0.0);
  return assemble_cluster(sol, central, sol.side, pulse.period, 3.0 * pulse.period);
}

}  // namespace coopsim
