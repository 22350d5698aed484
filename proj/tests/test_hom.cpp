#include "doctest.h"

#include "coopsim/correlators.hpp"
#include "coopsim/hom.hpp"
#include "coopsim/instrument.hpp"

#include <cmath>
#include <stdexcept>

using namespace coopsim;

namespace {

struct CwTraces {
  CorrelationTrace g2;
  CoherenceTrace g1;
};

CwTraces cw_traces(Model m, const EmitterParams& p, const Grid& tau) {
  return {g2_cw(m, p, DriveProtocol::incoherent_cw(), tau),
          g1_cw(m, p, DriveProtocol::incoherent_cw(), tau)};
}

CorrelationTrace hom_visibility(const CwTraces& t, double overlap) {
  HomConfig par;
  par.polarization_overlap = overlap;
  HomConfig perp;
  perp.polarization_overlap = 0.0;
  return visibility(hom_cross_correlation(t.g2, t.g1, par),
                    hom_cross_correlation(t.g2, t.g1, perp));
}

}  // namespace

TEST_CASE("interference term follows the coherence identity at every point") {
  EmitterParams p;
  p.gamma = 1.0;
  p.gamma_p = 0.4;
  p.gamma_d = 0.6;
  Grid tau = uniform_grid(0.0, 5.0, 401);
  CwTraces t = cw_traces(Model::Cooperative, p, tau);
  const double eta = 0.83;
  CorrelationTrace v = hom_visibility(t, eta);
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    double ref = eta * eta * std::norm(t.g1.values[i]) / (1.0 + t.g2.values[i]);
    CHECK(std::abs(v.values[i] - ref) <= 1e-12);
  }
}

TEST_CASE("cross-polarized coincidences never drop below one half") {
  EmitterParams p;
  p.gamma = 1.0 / 1.76;
  p.gamma_p = p.gamma;
  p.gamma_d = 1.0 / 0.199;
  Grid tau = uniform_grid(0.0, 4.0, 801);
  CwTraces t = cw_traces(Model::Cooperative, p, tau);
  HomConfig perp;
  perp.polarization_overlap = 0.0;
  CorrelationTrace c = hom_cross_correlation(t.g2, t.g1, perp);
  CHECK(c.values.minCoeff() >= 0.5 - 1e-12);
}

TEST_CASE("an ideal single emitter interferes perfectly at zero delay") {
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  p.gamma_p = 0.1 * p.gamma;
  Grid tau = uniform_grid(0.0, 4.0, 401);
  CorrelationTrace v = hom_visibility(cw_traces(Model::Single, p, tau), 1.0);
  CHECK(std::abs(v.values[0] - 1.0) < 1e-9);
}

TEST_CASE("the pair interferes at half visibility under balanced pumping") {
  EmitterParams p;
  p.gamma = 1.0 / 1.76;
  p.gamma_p = p.gamma;
  p.gamma_d = 1.0 / 0.199;
  Grid tau = uniform_grid(0.0, 4.0, 401);
  CorrelationTrace v = hom_visibility(cw_traces(Model::Cooperative, p, tau), 1.0);
  CHECK(std::abs(v.values[0] - (0.5)) <= 0.01);
}

TEST_CASE("dephasing never raises the zero-delay visibility of a single emitter") {
  EmitterParams p;
  p.gamma = 1.0;
  p.gamma_p = 0.3;
  Grid tau = uniform_grid(0.0, 6.0, 241);
  double last = 2.0;
  for (double gd : {0.0, 0.5, 2.0, 10.0}) {
    p.gamma_d = gd;
    CwTraces t = cw_traces(Model::Single, p, tau);
    CorrelationTrace v = hom_visibility(t, 1.0);
    CHECK(v.values[0] <= last + 1e-12);
    last = v.values[0];
    // and the coherence envelope itself never grows with delay
    for (Eigen::Index i = 1; i < tau.size(); ++i)
      CHECK(std::abs(t.g1.values[i]) <= std::abs(t.g1.values[i - 1]) + 1e-12);
  }
}

TEST_CASE("coherence time windows for the frozen reference curves") {
  int half = 2000;
  Grid tau(2 * half + 1);
  for (Eigen::Index i = 0; i < tau.size(); ++i) tau[i] = (double(i) - half) * 0.0025;

  CorrelationTrace g2;
  g2.tau = tau;
  g2.values.resize(tau.size());
  CoherenceTrace g1;
  g1.tau = tau;
  g1.values.resize(tau.size());

  double g = 1.0 / 1.34;
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    double a = std::abs(tau[i]);
    g2.values[i] = 1.0 - (1.0 + g * a) * std::exp(-g * a);
    g1.values[i] = std::exp(-a / 1.34);
  }
  HomConfig par, perp;
  perp.polarization_overlap = 0.0;
  CorrelationTrace vs = visibility(hom_cross_correlation(g2, g1, par),
                                   hom_cross_correlation(g2, g1, perp));
  double ctw_single = coherence_time_window(vs);
  CHECK(ctw_single == doctest::Approx(1.223459).epsilon(1e-3));

  double gam = 1.0 / 1.76, gd = 1.0 / 0.199;
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    double a = std::abs(tau[i]);
    g2.values[i] = analytic_g2_cw(gam, gd, a);
    g1.values[i] = std::exp(-a / 1.06);
  }
  CorrelationTrace vc = visibility(hom_cross_correlation(g2, g1, par),
                                   hom_cross_correlation(g2, g1, perp));
  double ctw_coop = coherence_time_window(vc);
  CHECK(ctw_coop == doctest::Approx(0.588200).epsilon(1e-3));
  CHECK(ctw_single >= 2.0 * ctw_coop);
}

TEST_CASE("mismatched trace grids are rejected") {
  EmitterParams p;
  p.gamma = 1.0;
  p.gamma_p = 0.5;
  CwTraces t = cw_traces(Model::Single, p, uniform_grid(0.0, 3.0, 31));
  CoherenceTrace other = g1_cw(Model::Single, p, DriveProtocol::incoherent_cw(),
                               uniform_grid(0.0, 3.0, 61));
  HomConfig cfg;
  CHECK_THROWS_AS(hom_cross_correlation(t.g2, other, cfg), std::invalid_argument);
}

TEST_CASE("visibility requires strictly positive reference coincidences") {
  CorrelationTrace par, perp;
  par.tau = uniform_grid(0.0, 1.0, 3);
  par.values = Grid::Zero(3);
  perp.tau = par.tau;
  perp.values = Grid::Zero(3);
  CHECK_THROWS_AS(visibility(par, perp), NumericalError);
}

TEST_CASE("pulsed interference visibilities at the reference rates") {
  HomConfig par, perp;
  perp.polarization_overlap = 0.0;

  EmitterParams ps;
  ps.gamma = 1.0 / 0.643;
  ps.gamma_d = 1.5 * ps.gamma;
  DriveProtocol pi_pulse = DriveProtocol::pulsed(M_PI);
  PulsedHistogram hp = hom_pulsed(Model::Single, ps, pi_pulse, par);
  PulsedHistogram hx = hom_pulsed(Model::Single, ps, pi_pulse, perp);
  double v_non = 1.0 - integrate_peak(hp, 0.0, 10.0) / integrate_peak(hx, 0.0, 10.0);
  CHECK(std::abs(v_non - (0.38597)) <= 2e-3);

  // postselection is resolution-limited: smear with the detector response first
  IrfModel irf;
  irf.fwhm = 0.240;
  Grid par_c = convolve_grid(hp.tau, hp.values, irf, EdgeMode::Zero);
  Grid perp_c = convolve_grid(hx.tau, hx.values, irf, EdgeMode::Zero);
  auto window = [&](const Grid& v, double halfw) {
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < hp.tau.size(); ++i)
      if (hp.tau[i] >= -halfw && hp.tau[i + 1] <= halfw)
        s += 0.5 * (v[i] + v[i + 1]) * (hp.tau[i + 1] - hp.tau[i]);
    return s;
  };
  double v_post = 1.0 - window(par_c, 0.05) / window(perp_c, 0.05);
  CHECK(std::abs(v_post - (0.81454)) <= 5e-3);
  CHECK(v_post > v_non);
}

TEST_CASE("pulsed pair visibility stays low at the reference rates") {
  HomConfig par, perp;
  perp.polarization_overlap = 0.0;
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  p.gamma_d = 1.0 / 0.280;
  DriveProtocol pulse = DriveProtocol::pulsed(M_PI / 2.0);
  PulsedHistogram hp = hom_pulsed(Model::Cooperative, p, pulse, par);
  PulsedHistogram hx = hom_pulsed(Model::Cooperative, p, pulse, perp);
  double v = 1.0 - integrate_peak(hp, 0.0, 10.0) / integrate_peak(hx, 0.0, 10.0);
  CHECK(std::abs(v - (0.18272)) <= 2e-3);
}

TEST_CASE("pulsed interferometer requires the delay to match the repetition period") {
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  HomConfig cfg;
  cfg.delay = 7.0;
  CHECK_THROWS_AS(hom_pulsed(Model::Single, p, DriveProtocol::pulsed(M_PI), cfg), ConfigError);
  CHECK_THROWS_AS(hom_pulsed(Model::Single, p, DriveProtocol::incoherent_cw(), HomConfig{}),
                  std::invalid_argument);
}
