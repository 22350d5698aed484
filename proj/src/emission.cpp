#include "coopsim/emission.hpp"

#include "coopsim/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace coopsim {

namespace {

void require_pair(const Matrix& rho, const char* what) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument(std::string(what) + ": two-emitter state required");
}

double projector_population(const Matrix& rho, const Vector& state) {
  return std::real((state.adjoint() * rho * state)(0, 0));
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Matrix DipoleSet::measure() const {
  if (channels.empty()) throw std::invalid_argument("dipole set has no channels");
  const Eigen::Index d = channels.front().first.rows();
  Matrix m = Matrix::Zero(d, d);
  for (const auto& [op, w] : channels) m += (w * w) * (op.adjoint() * op);
  return m;
}

DipoleSet dipole_set(Model model, const EmitterParams& p) {
  DipoleSet d;
  switch (model) {
    case Model::Single:
      d.channels = {{sigma_minus(), 1.0}};
      d.rate = p.gamma;
      break;
    case Model::Independent:
      d.channels = {{sigma1_minus(), 1.0}, {sigma2_minus(), 1.0}};
      d.rate = p.gamma;
      break;
    case Model::Cooperative:
      d.channels = {{symmetric_minus(), 1.0}};
      d.rate = p.gamma;
      break;
    case Model::Superradiant:
      d.channels = {{symmetric_minus(), 1.0}};
      d.rate = p.collective_rate();
      break;
  }
  return d;
}

double g2_zero_independent(double n1, double n2) {
  if (!(n1 >= 0.0 && n1 <= 1.0) || !(n2 >= 0.0 && n2 <= 1.0))
    throw std::invalid_argument("g2_zero_independent: populations must lie in [0, 1]");
  const double s = n1 + n2;
  if (s <= 0.0)
    throw std::invalid_argument("g2_zero_independent: undefined when both emitters are dark");
  return 2.0 * n1 * n2 / (s * s);
}

double g2_zero_cooperative(const Matrix& rho) {
  require_pair(rho, "g2_zero_cooperative");
  const double n_ee = std::real(rho(3, 3));
  const double n_s = symmetric_population(rho);
  const double den = n_ee + n_s;
  if (den <= 0.0)
    throw std::invalid_argument("g2_zero_cooperative: undefined without excited population");
  return n_ee / (den * den);
}

double population1(const Matrix& rho) {
  require_pair(rho, "population1");
  return std::real(rho(2, 2) + rho(3, 3));
}

double population2(const Matrix& rho) {
  require_pair(rho, "population2");
  return std::real(rho(1, 1) + rho(3, 3));
}

double symmetric_population(const Matrix& rho) {
  require_pair(rho, "symmetric_population");
  return projector_population(rho, symmetric_state());
}

double antisymmetric_population(const Matrix& rho) {
  require_pair(rho, "antisymmetric_population");
  return projector_population(rho, antisymmetric_state());
}

double doubly_excited_population(const Matrix& rho) {
  require_pair(rho, "doubly_excited_population");
  return std::real(rho(3, 3));
}

double directional_coincidence(const WaveVectorPair& pair) {
  const double phase = (pair.k2 - pair.k1).dot(pair.r);
  return 0.5 * (1.0 + std::cos(phase));
}

double directional_average(std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0)
    throw std::invalid_argument("directional_average: need at least one sample");
  std::mt19937_64 rng(seed);
  const double two_pi = 2.0 * std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i)
    sum += 0.5 * (1.0 + std::cos(two_pi * uniform01(rng)));
  return sum / double(n_samples);
}

}  // namespace coopsim
