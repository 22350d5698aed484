#pragma once

#include "coopsim/types.hpp"

namespace coopsim {

// Two-time solution over one excitation period. Every field is averaged over
// the relative drive-phase branches (one branch for the single emitter, the
// +/- pair otherwise): within a period the inter-emitter phase is fixed, but it
// scrambles from pulse to pulse, so single-period interference terms must not
// survive the shot average while two-photon quantities, which are phase-free
// branch by branch, do.
struct PulsedSolution {
  Grid t;             // within one period
  Grid intensity;     // <M>(t), operator expectation without the rate prefactor
  Grid tau;           // [0, tau_max]
  Grid central;       // C0(tau) = int dt G2(t, t+tau)
  Grid side;          // int dt I(t) I(t+tau), the independent-pulse side peak
  Grid coherence_sq;  // J(tau) = int dt |G1(t, tau)|^2 (only when with_g1)
  double intensity_area = 0.0;  // int I dt
  double rate_scale = 0.0;      // radiative rate of the measured channel
};

PulsedSolution solve_pulsed(Model model, const EmitterParams& p, const DriveProtocol& pulse,
                            double tau_max, double dtau, bool with_g1);

// Lays a central peak and replicas of the side peak onto a symmetric delay grid
// covering tau_span, normalized to unit side-peak area. central and side are
// sampled on sol.tau.
PulsedHistogram assemble_cluster(const PulsedSolution& sol, const Grid& central, const Grid& side,
                                 double period, double tau_span);

}  // namespace coopsim
