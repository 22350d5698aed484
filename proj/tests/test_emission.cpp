#include "doctest.h"

#include "coopsim/emission.hpp"
#include "coopsim/operators.hpp"

#include <cmath>

using namespace coopsim;

TEST_CASE("zero-delay correlation of two independent emitters") {
  CHECK(g2_zero_independent(0.2, 0.8) == doctest::Approx(0.32).epsilon(1e-12));
  CHECK(g2_zero_independent(0.3, 0.3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g2_zero_independent(0.0, 0.7) == 0.0);
}

TEST_CASE("zero-delay correlation through the symmetric channel") {
  Vector s = symmetric_state();
  Matrix rho = s * s.adjoint();
  CHECK(g2_zero_cooperative(rho) == 0.0);

  // an uncorrelated product state is Poissonian through the collective channel
  Matrix one(2, 2);
  one << 0.7, 0.0, 0.0, 0.3;
  CHECK(g2_zero_cooperative(kron(one, one)) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix ee = Matrix::Zero(4, 4);
  ee(3, 3) = 1.0;
  CHECK(g2_zero_cooperative(ee) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("population accessors resolve the pair basis") {
  Matrix rho = Matrix::Zero(4, 4);
  rho(1, 1) = 0.1;  // |ge>: emitter 2 excited
  rho(2, 2) = 0.3;  // |eg>: emitter 1 excited
  rho(3, 3) = 0.2;
  rho(0, 0) = 0.4;
  CHECK(population1(rho) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(population2(rho) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(doubly_excited_population(rho) == doctest::Approx(0.2).epsilon(1e-12));
  // no coherence: symmetric and antisymmetric populations split the middle evenly
  CHECK(symmetric_population(rho) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(antisymmetric_population(rho) == doctest::Approx(0.2).epsilon(1e-12));

  Vector s = symmetric_state();
  CHECK(symmetric_population(s * s.adjoint()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(antisymmetric_population(s * s.adjoint()) < 1e-15);
}

TEST_CASE("directional coincidence depends on the path difference only") {
  WaveVectorPair same;
  same.k1 = Eigen::Vector3d(1.0, 0.0, 0.0);
  same.k2 = same.k1;
  same.r = Eigen::Vector3d(300.0, -40.0, 5.0);
  CHECK(directional_coincidence(same) == doctest::Approx(1.0).epsilon(1e-12));

  WaveVectorPair opposed = same;
  opposed.k2 = Eigen::Vector3d(1.0 + M_PI / 300.0, 0.0, 0.0);
  opposed.r = Eigen::Vector3d(300.0, 0.0, 0.0);
  CHECK(directional_coincidence(opposed) < 1e-12);
}

TEST_CASE("direction-averaged coincidence converges to one half") {
  double mean = directional_average(200000, 7);
  CHECK(std::abs(mean - 0.5) < 3e-3);
  // deterministic for a fixed seed
  CHECK(directional_average(5000, 123) == directional_average(5000, 123));
  CHECK(directional_average(5000, 123) != directional_average(5000, 124));
}
