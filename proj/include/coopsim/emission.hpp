#pragma once

#include "coopsim/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace coopsim {

struct DipoleSet {
  std::vector<std::pair<Matrix, double>> channels;  // (jump operator, weight)
  double rate = 0.0;                                // radiative rate of each channel

  Matrix measure() const;  // sum of w^2 A^dag A
};

DipoleSet dipole_set(Model model, const EmitterParams& p);

double g2_zero_independent(double n1, double n2);
double g2_zero_cooperative(const Matrix& rho);

double population1(const Matrix& rho);
double population2(const Matrix& rho);
double symmetric_population(const Matrix& rho);
// The antisymmetric channel is dark for symmetric detection; exposed for
// inspection only.
double antisymmetric_population(const Matrix& rho);
double doubly_excited_population(const Matrix& rho);

struct WaveVectorPair {
  Eigen::Vector3d k1, k2;  // rad/nm
  Eigen::Vector3d r;       // nm
};

double directional_coincidence(const WaveVectorPair& pair);
double directional_average(std::size_t n_samples, std::uint64_t seed);

}  // namespace coopsim
