#include "coopsim/analysis.hpp"

#include "coopsim/correlators.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace coopsim {

namespace {

struct LmOutcome {
  Eigen::VectorXd theta;
  Eigen::MatrixXd cov;
  double chi2 = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> history;
};

// Damped least squares with Marquardt diagonal scaling. model(theta) returns
// the predicted counts; rates and amplitude enter theta as logs so positivity
// needs no constraint handling.
LmOutcome levenberg_marquardt(const std::function<Grid(const Eigen::VectorXd&)>& model,
                              const Grid& counts, const Grid& sigma, Eigen::VectorXd theta) {
  const Eigen::Index n = counts.size();
  const int p = int(theta.size());
  const auto chi2_of = [&](const Eigen::VectorXd& th) {
    const Grid r = (counts - model(th)) / sigma;
    const double c = r.matrix().squaredNorm();
    return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
  };
  const auto jacobian = [&](const Eigen::VectorXd& th, const Grid& m0) {
    Eigen::MatrixXd j(n, p);
    for (int k = 0; k < p; ++k) {
      Eigen::VectorXd th2 = th;
      const double delta = 1e-6;
      th2[k] += delta;
      j.col(k) = ((m0 - model(th2)) / sigma).matrix() / delta;  // d r / d theta_k
    }
    return j;
  };

  LmOutcome out;
  double chi2 = chi2_of(theta);
  out.history.push_back(chi2);
  double lambda = 1e-3;

  for (out.iterations = 0; out.iterations < 200 && !out.converged; ++out.iterations) {
    const Grid m0 = model(theta);
    const Eigen::VectorXd r0 = ((counts - m0) / sigma).matrix();
    const Eigen::MatrixXd j = jacobian(theta, m0);
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r0;

    bool accepted = false;
    Eigen::VectorXd step = Eigen::VectorXd::Zero(p);
    while (lambda <= 1e12) {
      Eigen::MatrixXd damped = jtj;
      for (int k = 0; k < p; ++k)
        damped(k, k) += lambda * std::max(jtj(k, k), 1e-30);
      step = damped.ldlt().solve(-g);
      const Eigen::VectorXd trial = theta + step;
      const double chi2_trial = chi2_of(trial);
      if (chi2_trial < chi2) {
        theta = trial;
        chi2 = chi2_trial;
        out.history.push_back(chi2);
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (step.norm() <= 1e-10 * (theta.norm() + 1e-10)) {
      out.converged = true;
      ++out.iterations;
      break;
    }
    if (!accepted) break;
  }

  out.theta = theta;
  out.chi2 = chi2;
  const Grid m0 = model(theta);
  const Eigen::MatrixXd j = jacobian(theta, m0);
  const double chi2_red = chi2 / double(std::max<Eigen::Index>(n - p, 1));
  out.cov = chi2_red *
            (j.transpose() * j).completeOrthogonalDecomposition().pseudoInverse();
  return out;
}

Grid weights_from_counts(const Grid& counts) {
  if ((counts < 0.0).any()) throw std::invalid_argument("fit: counts must be nonnegative");
  return counts.max(1.0).sqrt();
}

// amplitude * (IRF-convolved shape) + baseline, evaluated on the data grid via
// an extended grid so no edge extension leaks into the fit window
Grid convolved_shape(const Grid& tau, const std::function<double(double)>& shape,
                     const IrfModel& irf) {
  const double h = grid_spacing(tau, "fit grid");
  const long half = kernel_half_width(irf, h);
  const Eigen::Index n = tau.size();
  Grid ext_tau(n + 2 * half), ext_val(n + 2 * half);
  for (Eigen::Index i = 0; i < ext_tau.size(); ++i) {
    ext_tau[i] = tau[0] + h * double(i - half);
    ext_val[i] = shape(ext_tau[i]);
  }
  const Grid conv = convolve_grid(ext_tau, ext_val, irf, EdgeMode::Zero);
  return conv.segment(half, n);
}

double edge_mean(const Grid& counts) {
  const Eigen::Index n = counts.size();
  const Eigen::Index k = std::max<Eigen::Index>(1, n / 10);
  const double head = counts.head(k).mean();
  const double tail = counts.tail(k).mean();
  return std::max(head, tail);
}

}  // namespace

Grid fit_model_g2_cw(const Grid& tau, const IrfModel& irf, double gamma, double gamma_d,
                     double amplitude) {
  return amplitude * convolved_shape(
                         tau, [&](double t) { return analytic_g2_cw(gamma, gamma_d, t); }, irf);
}

Grid fit_model_g2_pulsed_peak(const Grid& tau, const IrfModel& irf, double gamma, double gamma_d,
                              double amplitude, double baseline) {
  return amplitude * convolved_shape(
                         tau, [&](double t) { return analytic_g2_pulsed_peak(gamma, gamma_d, t); },
                         irf) +
         baseline;
}

FitResult fit_g2_cw(const Histogram& hist, const IrfModel& irf, const FitInit& init) {
  if (hist.tau.size() < 5) throw std::invalid_argument("fit: too few points");
  if (!(init.gamma > 0.0) || !(init.gamma_d > 0.0))
    throw std::invalid_argument("fit: initial rates must be positive");
  const Grid sigma = weights_from_counts(hist.counts);
  const double a0 =
      init.amplitude > 0.0 ? init.amplitude : std::max(edge_mean(hist.counts), 1.0);

  const auto model = [&](const Eigen::VectorXd& th) {
    const double gamma = std::exp(th[0]);
    const double gamma_d = std::exp(th[1]);
    const double amp = std::exp(th[2]);
    return Grid(amp * convolved_shape(
                          hist.tau, [&](double t) { return analytic_g2_cw(gamma, gamma_d, t); },
                          irf));
  };

  Eigen::VectorXd theta(3);
  theta << std::log(init.gamma), std::log(init.gamma_d), std::log(a0);
  const LmOutcome lm = levenberg_marquardt(model, hist.counts, sigma, theta);

  FitResult res;
  res.gamma = std::exp(lm.theta[0]);
  res.gamma_d = std::exp(lm.theta[1]);
  res.amplitude = std::exp(lm.theta[2]);
  res.gamma_err = res.gamma * std::sqrt(std::max(lm.cov(0, 0), 0.0));
  res.gamma_d_err = res.gamma_d * std::sqrt(std::max(lm.cov(1, 1), 0.0));
  res.amplitude_err = res.amplitude * std::sqrt(std::max(lm.cov(2, 2), 0.0));
  res.residual_norm = std::sqrt(lm.chi2);
  res.converged = lm.converged;
  res.iterations = lm.iterations;
  res.objective_history = lm.history;
  return res;
}

FitResult fit_g2_pulsed_peak(const Histogram& hist, const IrfModel& irf, double gamma_fixed,
                             const FitInit& init) {
  if (hist.tau.size() < 5) throw std::invalid_argument("fit: too few points");
  if (!(gamma_fixed > 0.0)) throw std::invalid_argument("fit: fixed decay rate must be positive");
  if (!(init.gamma_d > 0.0)) throw std::invalid_argument("fit: initial rates must be positive");
  const Grid sigma = weights_from_counts(hist.counts);
  const double a0 = init.amplitude > 0.0
                        ? init.amplitude
                        : std::max(hist.counts.maxCoeff() - init.baseline, 1.0);

  const auto model = [&](const Eigen::VectorXd& th) {
    const double gamma_d = std::exp(th[0]);
    const double amp = std::exp(th[1]);
    const double base = th[2];
    return Grid(amp * convolved_shape(
                          hist.tau,
                          [&](double t) { return analytic_g2_pulsed_peak(gamma_fixed, gamma_d, t); },
                          irf) +
                base);
  };

  Eigen::VectorXd theta(3);
  theta << std::log(init.gamma_d), std::log(a0), init.baseline;
  const LmOutcome lm = levenberg_marquardt(model, hist.counts, sigma, theta);

  FitResult res;
  res.gamma = gamma_fixed;
  res.gamma_err = 0.0;
  res.gamma_d = std::exp(lm.theta[0]);
  res.amplitude = std::exp(lm.theta[1]);
  res.baseline = lm.theta[2];
  res.gamma_d_err = res.gamma_d * std::sqrt(std::max(lm.cov(0, 0), 0.0));
  res.amplitude_err = res.amplitude * std::sqrt(std::max(lm.cov(1, 1), 0.0));
  res.baseline_err = std::sqrt(std::max(lm.cov(2, 2), 0.0));
  res.residual_norm = std::sqrt(lm.chi2);
  res.converged = lm.converged;
  res.iterations = lm.iterations;
  res.objective_history = lm.history;
  return res;
}

}  // namespace coopsim
