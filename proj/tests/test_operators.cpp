#include "doctest.h"

#include "coopsim/operators.hpp"

#include <cmath>

using namespace coopsim;

TEST_CASE("kron dimensions and entries") {
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  Matrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  CHECK(k(0, 1) == std::complex<double>(5.0));
  CHECK(k(0, 2) == std::complex<double>(0.0));
  CHECK(k(1, 0) == std::complex<double>(6.0));
  CHECK(k(1, 3) == std::complex<double>(2.0 * 7.0));
  CHECK(k(2, 3) == std::complex<double>(4.0 * 5.0));
  CHECK(k(3, 3) == std::complex<double>(4.0 * 7.0));
}

TEST_CASE("single emitter ladder algebra") {
  Matrix sm = sigma_minus();
  Matrix sp = sigma_plus();
  CHECK((sp - sm.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sp * sm - number_op()).cwiseAbs().maxCoeff() == 0.0);
  // sigma- |e> = |g>, sigma- |g> = 0
  Vector e = Vector::Zero(2);
  e[1] = 1.0;
  Vector g = sm * e;
  CHECK(std::abs(g[0] - 1.0) == 0.0);
  CHECK(std::abs(g[1]) == 0.0);
  CHECK((sm * sm).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pair embeddings act on their own emitter") {
  // basis order |gg>, |ge>, |eg>, |ee>: emitter 1 is the left factor
  Matrix n1 = embed1(number_op());
  Matrix n2 = embed2(number_op());
  CHECK(n1(2, 2).real() == 1.0);
  CHECK(n1(3, 3).real() == 1.0);
  CHECK(n1(1, 1).real() == 0.0);
  CHECK(n2(1, 1).real() == 1.0);
  CHECK(n2(3, 3).real() == 1.0);
  CHECK(n2(2, 2).real() == 0.0);
  Matrix comm = embed1(sigma_minus()) * embed2(sigma_plus()) -
                embed2(sigma_plus()) * embed1(sigma_minus());
  CHECK(comm.cwiseAbs().maxCoeff() == 0.0);
  CHECK((sigma1_minus() - embed1(sigma_minus())).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sigma2_minus() - embed2(sigma_minus())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("symmetric channel lowers |ee> into the symmetric state") {
  Vector ee = Vector::Zero(4);
  ee[3] = 1.0;
  Vector out = symmetric_minus() * ee;
  Vector s = symmetric_state();
  CHECK((out - s).cwiseAbs().maxCoeff() < 1e-15);
  // and annihilates the antisymmetric state
  Vector dark = symmetric_minus() * antisymmetric_state();
  CHECK(dark.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("symmetric and antisymmetric states are orthonormal") {
  Vector s = symmetric_state();
  Vector a = antisymmetric_state();
  CHECK(std::abs(s.squaredNorm() - 1.0) < 1e-15);
  CHECK(std::abs(a.squaredNorm() - 1.0) < 1e-15);
  CHECK(std::abs(s.dot(a)) < 1e-15);
  // both live entirely in the singly excited sector
  CHECK(std::abs(s[0]) + std::abs(s[3]) < 1e-15);
  CHECK(std::abs(a[0]) + std::abs(a[3]) < 1e-15);
}

TEST_CASE("symmetric lowering operator squares to a single deexcitation") {
  // (sigma_S)^2 |ee> = sqrt(2)-normalized cascade down to |gg>
  Vector ee = Vector::Zero(4);
  ee[3] = 1.0;
  Vector gg = symmetric_minus() * (symmetric_minus() * ee);
  CHECK(std::abs(gg[0] - 1.0) < 1e-15);
  Vector dead = symmetric_minus() * gg;
  CHECK(dead.cwiseAbs().maxCoeff() < 1e-15);
}
