#include "coopsim/operators.hpp"

#include <cmath>

namespace coopsim {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix sigma_minus() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 1) = 1.0;
  return s;
}

Matrix sigma_plus() { return sigma_minus().adjoint(); }

Matrix number_op() { return sigma_plus() * sigma_minus(); }

Matrix embed1(const Matrix& a) { return kron(a, Matrix::Identity(2, 2)); }

Matrix embed2(const Matrix& a) { return kron(Matrix::Identity(2, 2), a); }

Matrix sigma1_minus() { return embed1(sigma_minus()); }

Matrix sigma2_minus() { return embed2(sigma_minus()); }

Matrix symmetric_minus() { return (sigma1_minus() + sigma2_minus()) / std::sqrt(2.0); }

Vector symmetric_state() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return v;
}

Vector antisymmetric_state() {
  Vector v = Vector::Zero(4);
  v(1) = -1.0 / std::sqrt(2.0);
  v(2) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace coopsim
