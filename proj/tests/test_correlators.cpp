#include "doctest.h"

#include "coopsim/analysis.hpp"
#include "coopsim/correlators.hpp"
#include "coopsim/dynamics.hpp"

#include <cmath>

using namespace coopsim;

TEST_CASE("closed-form intensity correlations") {
  // no dephasing: flat
  for (double t : {0.0, 0.3, 2.0}) CHECK(analytic_g2_cw(1.0, 0.0, t) == 1.0);
  // the dip bottoms out between the two rate scales
  double g = 1.0, gd = 4.0;
  double tstar = std::log(1.0 + gd / (2.0 * g)) / gd;
  CHECK(analytic_g2_cw(g, gd, tstar) < analytic_g2_cw(g, gd, 0.0));
  CHECK(analytic_g2_cw(g, gd, 0.0) == 1.0);
  CHECK(analytic_g2_cw(g, gd, 50.0) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(analytic_g2_pulsed_peak(1.0, 3.0, 0.0) == 1.0);
  CHECK(analytic_g2_pulsed_peak(1.0, 3.0, 2.0) ==
        doctest::Approx(0.5 * (std::exp(-2.0) + std::exp(-8.0))).epsilon(1e-14));
}

TEST_CASE("pair correlation under balanced pumping matches the closed form") {
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  p.gamma_p = p.gamma;
  for (double gd : {0.0, p.gamma, 10.0 * p.gamma}) {
    p.gamma_d = gd;
    Grid tau = uniform_grid(0.0, 5.0 / p.gamma, 401);
    CorrelationTrace t = g2_cw(Model::Cooperative, p, DriveProtocol::incoherent_cw(), tau);
    for (Eigen::Index i = 0; i < tau.size(); ++i) {
      double ref = analytic_g2_cw(p.gamma, gd, tau[i]);
      CHECK(std::abs(t.values[i] - ref) < 1e-12 * ref);
    }
  }
}

TEST_CASE("equal-population independent emitters give one half at zero delay") {
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  p.gamma_p = p.gamma;
  Grid tau = uniform_grid(0.0, 5.0, 51);
  CorrelationTrace t = g2_cw(Model::Independent, p, DriveProtocol::incoherent_cw(), tau);
  CHECK(std::abs(t.values[0] - 0.5) < 1e-8);
  CHECK(t.values[tau.size() - 1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("a single emitter cannot emit twice at once") {
  EmitterParams p;
  p.gamma = 1.0;
  p.gamma_p = 0.7;
  Grid tau = uniform_grid(0.0, 3.0, 31);
  CorrelationTrace t = g2_cw(Model::Single, p, DriveProtocol::incoherent_cw(), tau);
  CHECK(std::abs(t.values[0]) < 1e-12);
}

TEST_CASE("single emitter under incoherent pumping recovers at the total rate") {
  EmitterParams p;
  p.gamma = 1.0;
  p.gamma_p = 0.3;
  p.gamma_d = 0.7;
  Grid tau = uniform_grid(0.0, 5.0, 201);
  CorrelationTrace g2 = g2_cw(Model::Single, p, DriveProtocol::incoherent_cw(), tau);
  CoherenceTrace g1 = g1_cw(Model::Single, p, DriveProtocol::incoherent_cw(), tau);
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    CHECK(std::abs(g2.values[i] - (1.0 - std::exp(-(p.gamma + p.gamma_p) * tau[i]))) < 1e-8);
    double coh = std::exp(-0.5 * (p.gamma + p.gamma_p + p.gamma_d) * tau[i]);
    CHECK(std::abs(std::abs(g1.values[i]) - coh) < 1e-8);
  }
  CHECK(std::abs(g1.values[0] - std::complex<double>(1.0)) < 1e-12);
}

TEST_CASE("weak coherent drive reproduces the re-excitation shape") {
  EmitterParams p;
  p.gamma = 1.0;
  CorrelationTrace t =
      g2_cw(Model::Single, p, DriveProtocol::coherent_cw(0.1), uniform_grid(0.0, 8.0, 161));
  CHECK(std::abs(t.values[0]) < 1e-12);
  for (Eigen::Index i = 0; i < t.tau.size(); ++i) {
    double ref = std::pow(1.0 - std::exp(-0.5 * t.tau[i]), 2.0);
    CHECK(std::abs(t.values[i] - ref) < 0.02);
    if (i) CHECK(t.values[i] >= t.values[i - 1] - 1e-12);
  }
}

TEST_CASE("correlations factorize at long delay for every model") {
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  p.gamma_p = p.gamma;
  p.gamma_d = 2.0;
  for (Model m : {Model::Single, Model::Independent, Model::Cooperative, Model::Superradiant}) {
    Grid tau = uniform_grid(0.0, 50.0 / p.gamma, 101);
    CorrelationTrace t = g2_cw(m, p, DriveProtocol::incoherent_cw(), tau);
    CHECK(std::abs(t.values[tau.size() - 1] - 1.0) < 1e-6);
  }
}

TEST_CASE("raw two-time correlation matches the normalized trace from steady state") {
  EmitterParams p;
  p.gamma = 1.0;
  p.gamma_p = 0.5;
  Liouvillian L = build_generator(Model::Single, p, DriveProtocol::incoherent_cw());
  Matrix ss = steady_state(L);
  Grid tau = uniform_grid(0.0, 4.0, 101);
  CorrelationTrace raw =
      two_time_g2(Model::Single, p, DriveProtocol::incoherent_cw(), ss, 0.0, tau);
  double n_ss = ss(1, 1).real();
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    double ref = n_ss * n_ss * (1.0 - std::exp(-(p.gamma + p.gamma_p) * tau[i]));
    CHECK(std::abs(raw.values[i] - ref) < 1e-8);
  }
}

TEST_CASE("pulsed intensity decays at the radiative rate after the pulse") {
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  p.gamma_d = 1.0 / 0.280;
  DriveProtocol pulse = DriveProtocol::pulsed(M_PI / 2.0, 0.1, 13.0);
  Grid t = uniform_grid(0.0, 8.0, 1601);
  CorrelationTrace single = time_resolved_intensity(Model::Single, p, pulse, t);
  CHECK(exponential_tail_fit(single, 1.5) == doctest::Approx(0.643).epsilon(0.01));
  CorrelationTrace coop = time_resolved_intensity(Model::Cooperative, p, pulse, t);
  CHECK(exponential_tail_fit(coop, 1.5) == doctest::Approx(0.643).epsilon(0.02));
}

TEST_CASE("collective decay from double excitation is twice as fast") {
  EmitterParams p;
  p.gamma = 1.0 / 0.643;
  Matrix ee = Matrix::Zero(4, 4);
  ee(3, 3) = 1.0;
  Grid t = uniform_grid(0.0, 8.0, 1601);
  CorrelationTrace sr = time_resolved_intensity(Model::Superradiant, p, ee, t);
  double tail = exponential_tail_fit(sr, 1.5);
  CHECK(tail == doctest::Approx(0.3456).epsilon(0.02));
  CHECK(std::abs(tail - 0.643 / 2.0) < 0.1 * 0.643 / 2.0);

  CorrelationTrace co = time_resolved_intensity(Model::Cooperative, p, ee, t);
  CHECK(sr.values[0] == doctest::Approx(2.0 * co.values[0]).epsilon(1e-9));
  // brighter early, burned out later
  for (int i : {100, 200}) CHECK(sr.values[i] > co.values[i]);
  CHECK(sr.values[400] < co.values[400]);
}

TEST_CASE("grid helpers") {
  Grid half = uniform_grid(0.0, 2.0, 5);
  CHECK(half.size() == 5);
  CHECK(half[0] == 0.0);
  CHECK(half[4] == 2.0);
  CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-15));

  Grid full = mirror_grid(half);
  CHECK(full.size() == 9);
  CHECK(full[0] == -2.0);
  CHECK(full[4] == 0.0);
  CHECK(full[8] == 2.0);

  Grid vals(5);
  vals << 10, 11, 12, 13, 14;
  Grid mirrored = mirror_values(vals);
  CHECK(mirrored.size() == 9);
  CHECK(mirrored[0] == 14.0);
  CHECK(mirrored[4] == 10.0);
  CHECK(mirrored[8] == 14.0);

  EmitterParams p;
  p.gamma = 2.0;
  Grid d = default_tau_grid(p, 11);
  CHECK(d.size() == 11);
  CHECK(d[0] == 0.0);
  CHECK(d[10] > 0.0);
}
