#pragma once

#include "coopsim/types.hpp"

namespace coopsim {

// Basis: |g> = index 0, |e> = index 1. The pair space is emitter1 (x) emitter2
// with index 2*i1 + i2, so |gg> = 0, |ge> = 1, |eg> = 2, |ee> = 3.

Matrix kron(const Matrix& a, const Matrix& b);

Matrix sigma_minus();
Matrix sigma_plus();
Matrix number_op();

Matrix embed1(const Matrix& a);  // a (x) I
Matrix embed2(const Matrix& a);  // I (x) a

Matrix sigma1_minus();
Matrix sigma2_minus();
Matrix symmetric_minus();  // (sigma1- + sigma2-)/sqrt(2)

Vector symmetric_state();      // (|eg> + |ge>)/sqrt(2)
Vector antisymmetric_state();  // (|eg> - |ge>)/sqrt(2)

}  // namespace coopsim
