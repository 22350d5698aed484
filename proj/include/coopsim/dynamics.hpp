#pragma once

#include "coopsim/types.hpp"

#include <vector>

namespace coopsim {

// Column-stacking vectorization: vec(rho)[c*dim + r] = rho(r, c), so that
// vec(A rho B) = (B^T (x) A) vec(rho).

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int dim);

Matrix left_mul(const Matrix& a);
Matrix right_mul(const Matrix& a);

Matrix lindblad_dissipator(const Matrix& a, double rate);
Matrix commutator_superop(const Matrix& h);

struct GeneratorTerm {
  enum class Tag { LocalDecay, Pump, Dephasing, CollectiveDecay, Coherent };
  Tag tag;
  Matrix op;    // jump operator, or Hamiltonian for Coherent
  double rate;  // 1/ns; ignored for Coherent
};

// Sums the terms into one superoperator. Collective decay excludes per-emitter
// decay: the superradiant channel replaces it rather than adding to it.
Matrix generator_from_terms(const std::vector<GeneratorTerm>& terms, int dim);

struct Pulse {
  double area = 0.0;    // rad
  double fwhm = 0.040;  // ns
  double period = 12.44;

  double sigma() const;
  double center() const;     // 5 sigma
  double end() const;        // 10 sigma; envelope treated as zero beyond
  double amplitude() const;  // peak Rabi rate
  double envelope(double t) const;
};

struct Liouvillian {
  int dim = 2;
  Matrix static_part;  // complete generator for CW; everything but the pulse otherwise
  Matrix drive_part;   // superoperator multiplying the pulse envelope
  bool time_dependent = false;
  Pulse pulse;
};

// branch flips the sign of emitter 2's drive coupling; pulsed correlators
// average the two branches (relative optical phase scrambles between pulses).
Liouvillian build_generator(Model model, const EmitterParams& p, const DriveProtocol& drive,
                            int branch = +1);

Matrix propagate(const Matrix& rho, const Liouvillian& L, double dt);
Matrix propagate(const Matrix& rho, const Liouvillian& L, double t_from, double t_to);

Matrix steady_state(const Liouvillian& L);

Matrix expm(const Matrix& a);
double rk4_step_limit(const Liouvillian& L);

}  // namespace coopsim
