#pragma once

#include "coopsim/dynamics.hpp"
#include "coopsim/types.hpp"

namespace coopsim {

double analytic_g2_cw(double gamma, double gamma_d, double tau);
double analytic_g2_pulsed_peak(double gamma, double gamma_d, double tau);

// Raw (unnormalized) G2(t1, tau) by the regression recipe: propagate to t1,
// apply the model's jump operators left and right, propagate the pseudo-density
// over tau, measure. Independent detection channels are summed.
CorrelationTrace two_time_g2(Model model, const EmitterParams& p, const DriveProtocol& drive,
                             const Matrix& rho0, double t1, const Grid& tau_grid);

CorrelationTrace g2_cw(Model model, const EmitterParams& p, const DriveProtocol& drive,
                       const Grid& tau_grid);
CoherenceTrace g1_cw(Model model, const EmitterParams& p, const DriveProtocol& drive,
                     const Grid& tau_grid);

PulsedHistogram g2_pulsed(Model model, const EmitterParams& p, const DriveProtocol& pulse,
                          double tau_span);

// Area in [center - window/2, center + window/2] divided by the mean same-window
// side-peak area.
double integrate_peak(const PulsedHistogram& h, double center, double window);

CorrelationTrace time_resolved_intensity(Model model, const EmitterParams& p,
                                         const DriveProtocol& pulse, const Grid& t_grid);
CorrelationTrace time_resolved_intensity(Model model, const EmitterParams& p, const Matrix& rho0,
                                         const Grid& t_grid);

Grid default_tau_grid(const EmitterParams& p, int points = 2001);
Grid uniform_grid(double lo, double hi, int points);
Grid mirror_grid(const Grid& half);
Grid mirror_values(const Grid& half);

}  // namespace coopsim
