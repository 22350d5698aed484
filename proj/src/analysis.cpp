#include "coopsim/analysis.hpp"

#include <cmath>
#include <vector>

namespace coopsim {

double noise_ratio_from_g2(double g2_single_zero) {
  if (!(g2_single_zero >= 0.0 && g2_single_zero < 1.0))
    throw std::invalid_argument("single-dot g2(0) must lie in [0, 1)");
  return 1.0 / std::sqrt(1.0 - g2_single_zero) - 1.0;
}

double entanglement_fidelity(double g2_zero, double p_n) {
  if (!(g2_zero > 0.0)) throw std::invalid_argument("g2(0) must be positive");
  if (!(p_n >= 0.0)) throw std::invalid_argument("noise ratio must be nonnegative");
  const double g1 = p_n * (2.0 + p_n) / ((1.0 + p_n) * (1.0 + p_n));
  if (g2_zero <= g1) return 0.0;  // noise alone explains the coincidences
  const double f = (g2_zero - g1) * (g2_zero - g1) / ((1.0 - g1) * g2_zero);
  return std::min(1.0, std::max(0.0, f));
}

FidelityReport fidelity_report(double g2_zero, double g2_single_zero) {
  FidelityReport rep;
  rep.g2_zero = g2_zero;
  rep.p_n = noise_ratio_from_g2(g2_single_zero);
  rep.fidelity_lower_bound = entanglement_fidelity(g2_zero, rep.p_n);
  return rep;
}

double exponential_tail_fit(const CorrelationTrace& intensity, double t_min) {
  std::vector<double> t, logv;
  for (Eigen::Index i = 0; i < intensity.tau.size(); ++i) {
    if (intensity.tau[i] < t_min) continue;
    if (!(intensity.values[i] > 0.0))
      throw std::invalid_argument("tail fit needs positive intensities beyond t_min");
    t.push_back(intensity.tau[i]);
    logv.push_back(std::log(intensity.values[i]));
  }
  if (t.size() < 3) throw std::invalid_argument("tail fit needs at least three points beyond t_min");

  const double n = double(t.size());
  double st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sv += logv[i];
    stt += t[i] * t[i];
    stv += t[i] * logv[i];
  }
  const double denom = n * stt - st * st;
  if (!(denom > 0.0)) throw std::invalid_argument("tail fit needs distinct time points");
  const double slope = (n * stv - st * sv) / denom;
  if (!(slope < 0.0)) throw NumericalError("intensity tail does not decay");
  return -1.0 / slope;
}

}  // namespace coopsim
