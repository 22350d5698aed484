#pragma once

#include "coopsim/instrument.hpp"
#include "coopsim/types.hpp"

#include <vector>

namespace coopsim {

struct FitResult {
  double gamma = 0.0, gamma_err = 0.0;
  double gamma_d = 0.0, gamma_d_err = 0.0;
  double amplitude = 0.0, amplitude_err = 0.0;
  double baseline = 0.0, baseline_err = 0.0;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> objective_history;  // accepted steps only
};

struct FitInit {
  double gamma = 1.0 / 1.76;
  double gamma_d = 1.0 / 0.2;
  double amplitude = 0.0;  // nonpositive: scale from the data
  double baseline = 0.0;
};

// Damped least squares of amplitude * (IRF-convolved closed form) against
// Poisson-weighted counts; rates fitted through log transforms.
FitResult fit_g2_cw(const Histogram& hist, const IrfModel& irf, const FitInit& init);
FitResult fit_g2_pulsed_peak(const Histogram& hist, const IrfModel& irf, double gamma_fixed,
                             const FitInit& init);

// The model curves the fitters compare against, for plotting fits over data.
Grid fit_model_g2_cw(const Grid& tau, const IrfModel& irf, double gamma, double gamma_d,
                     double amplitude);
Grid fit_model_g2_pulsed_peak(const Grid& tau, const IrfModel& irf, double gamma, double gamma_d,
                              double amplitude, double baseline);

double noise_ratio_from_g2(double g2_single_zero);
double entanglement_fidelity(double g2_zero, double p_n);

struct FidelityReport {
  double g2_zero = 0.0;
  double p_n = 0.0;
  double fidelity_lower_bound = 0.0;
};

FidelityReport fidelity_report(double g2_zero, double g2_single_zero);

// Linear fit of log-intensity beyond t_min; returns the decay constant.
double exponential_tail_fit(const CorrelationTrace& intensity, double t_min);

}  // namespace coopsim
