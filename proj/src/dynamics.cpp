#include "coopsim/dynamics.hpp"

#include "coopsim/operators.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace coopsim {

Vector vectorize(const Matrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int dim) {
  if (v.size() != Eigen::Index(dim) * dim)
    throw std::invalid_argument("unvectorize: vector length does not match the dimension");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix left_mul(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("left_mul: operator must be square");
  return kron(Matrix::Identity(a.rows(), a.cols()), a);
}

Matrix right_mul(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("right_mul: operator must be square");
  return kron(a.transpose(), Matrix::Identity(a.rows(), a.cols()));
}

Matrix lindblad_dissipator(const Matrix& a, double rate) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("lindblad_dissipator: jump operator must be square");
  if (!(rate >= 0.0))
    throw std::invalid_argument("lindblad_dissipator: rate must be nonnegative");
  const Matrix ada = a.adjoint() * a;
  return rate * (kron(a.conjugate(), a) - 0.5 * left_mul(ada) - 0.5 * right_mul(ada));
}

Matrix commutator_superop(const Matrix& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("commutator_superop: Hamiltonian must be square");
  return cd(0.0, -1.0) * (left_mul(h) - right_mul(h));
}

Matrix generator_from_terms(const std::vector<GeneratorTerm>& terms, int dim) {
  bool local = false, collective = false;
  for (const auto& t : terms) {
    local = local || t.tag == GeneratorTerm::Tag::LocalDecay;
    collective = collective || t.tag == GeneratorTerm::Tag::CollectiveDecay;
  }
  if (local && collective)
    throw std::invalid_argument(
        "collective decay replaces per-emitter decay; a generator cannot carry both");

  Matrix g = Matrix::Zero(dim * dim, dim * dim);
  for (const auto& t : terms) {
    if (t.op.rows() != dim || t.op.cols() != dim)
      throw std::invalid_argument("generator term does not match the Hilbert dimension");
    if (t.tag == GeneratorTerm::Tag::Coherent)
      g += commutator_superop(t.op);
    else
      g += lindblad_dissipator(t.op, t.rate);
  }
  return g;
}

double Pulse::sigma() const { return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0))); }

double Pulse::center() const { return 5.0 * sigma(); }

double Pulse::end() const { return 10.0 * sigma(); }

double Pulse::amplitude() const {
  return area / (sigma() * std::sqrt(2.0 * std::numbers::pi));
}

double Pulse::envelope(double t) const {
  const double u = t - period * std::floor(t / period);
  if (u >= end()) return 0.0;
  const double x = (u - center()) / sigma();
  return amplitude() * std::exp(-0.5 * x * x);
}

Liouvillian build_generator(Model model, const EmitterParams& p, const DriveProtocol& drive,
                            int branch) {
  p.validate();
  drive.validate();
  if (branch != 1 && branch != -1)
    throw std::invalid_argument("build_generator: branch must be +1 or -1");

  const int dim = hilbert_dim(model);
  using Tag = GeneratorTerm::Tag;
  std::vector<GeneratorTerm> terms;

  if (model == Model::Single) {
    terms.push_back({Tag::LocalDecay, sigma_minus(), p.gamma});
    if (p.gamma_p > 0.0) terms.push_back({Tag::Pump, sigma_plus(), p.gamma_p});
    if (p.gamma_d > 0.0) terms.push_back({Tag::Dephasing, number_op(), p.gamma_d});
  } else {
    const Matrix lowering[2] = {sigma1_minus(), sigma2_minus()};
    if (model == Model::Superradiant) {
      terms.push_back({Tag::CollectiveDecay, symmetric_minus(), p.collective_rate()});
    } else {
      for (const auto& s : lowering) terms.push_back({Tag::LocalDecay, s, p.gamma});
    }
    for (const auto& s : lowering) {
      if (p.gamma_p > 0.0) terms.push_back({Tag::Pump, Matrix(s.adjoint()), p.gamma_p});
      if (p.gamma_d > 0.0) terms.push_back({Tag::Dephasing, Matrix(s.adjoint() * s), p.gamma_d});
    }
  }

  const bool coherent = drive.kind != DriveProtocol::Kind::IncoherentCW;
  if (coherent) {
    Matrix h_det;
    if (model == Model::Single) {
      h_det = drive.detuning[0] * number_op();
    } else {
      h_det = drive.detuning[0] * embed1(number_op()) + drive.detuning[1] * embed2(number_op());
    }
    if (h_det.cwiseAbs().maxCoeff() > 0.0) terms.push_back({Tag::Coherent, h_det, 0.0});
  }

  Matrix h_drive;
  if (model == Model::Single) {
    h_drive = 0.5 * (sigma_plus() + sigma_minus());
  } else {
    h_drive = 0.5 * (embed1(sigma_plus() + sigma_minus()) +
                     double(branch) * embed2(sigma_plus() + sigma_minus()));
  }

  Liouvillian L;
  L.dim = dim;
  L.drive_part = Matrix::Zero(dim * dim, dim * dim);
  switch (drive.kind) {
    case DriveProtocol::Kind::IncoherentCW:
      L.static_part = generator_from_terms(terms, dim);
      break;
    case DriveProtocol::Kind::CoherentCW:
      terms.push_back({Tag::Coherent, Matrix(drive.rabi * h_drive), 0.0});
      L.static_part = generator_from_terms(terms, dim);
      break;
    case DriveProtocol::Kind::CoherentPulsed:
      L.static_part = generator_from_terms(terms, dim);
      L.drive_part = commutator_superop(h_drive);
      L.time_dependent = true;
      L.pulse = Pulse{drive.pulse_area, drive.pulse_fwhm, drive.period};
      break;
  }
  return L;
}

namespace {

Vector superop_apply(const Liouvillian& L, double t, const Vector& v) {
  if (!L.time_dependent) return L.static_part * v;
  const double env = L.pulse.envelope(t);
  if (env == 0.0) return L.static_part * v;
  return L.static_part * v + env * (L.drive_part * v);
}

Vector rk4_step(const Liouvillian& L, double t, double h, const Vector& v) {
  const Vector k1 = superop_apply(L, t, v);
  const Vector k2 = superop_apply(L, t + 0.5 * h, v + (0.5 * h) * k1);
  const Vector k3 = superop_apply(L, t + 0.5 * h, v + (0.5 * h) * k2);
  const Vector k4 = superop_apply(L, t + h, v + h * k3);
  return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Matrix propagate(const Matrix& rho, const Liouvillian& L, double dt) {
  return propagate(rho, L, 0.0, dt);
}

Matrix propagate(const Matrix& rho, const Liouvillian& L, double t_from, double t_to) {
  if (rho.rows() != L.dim || rho.cols() != L.dim)
    throw std::invalid_argument("propagate: state dimension does not match the generator");
  const double dt = t_to - t_from;
  if (dt < 0.0) throw std::invalid_argument("propagate: end time precedes start time");
  if (dt == 0.0) return rho;
  if (t_from + dt == t_from)
    throw NumericalError("propagate: time step underflows at t = " + std::to_string(t_from));

  if (!L.time_dependent) {
    const Matrix e = expm(Matrix(L.static_part * dt));
    return unvectorize(e * vectorize(rho), L.dim);
  }

  const double h_max = rk4_step_limit(L);
  const long n = std::max(1L, long(std::ceil(dt / h_max)));
  const double h = dt / double(n);
  Vector v = vectorize(rho);
  for (long i = 0; i < n; ++i) {
    const double t = t_from + h * double(i);
    if (t + h == t)
      throw NumericalError("propagate: time step underflows at t = " + std::to_string(t));
    v = rk4_step(L, t, h, v);
  }
  return unvectorize(v, L.dim);
}

Matrix steady_state(const Liouvillian& L) {
  if (L.time_dependent)
    throw std::invalid_argument("steady_state: generator must be static");
  Eigen::JacobiSVD<Matrix> svd(L.static_part, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = sv(0) * 1e-10;
  int nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= tol) ++nullity;
  if (nullity != 1)
    throw NumericalError("steady_state: stationary subspace has dimension " +
                         std::to_string(nullity));

  Matrix rho = unvectorize(svd.matrixV().col(sv.size() - 1), L.dim);
  rho = Matrix(0.5 * (rho + rho.adjoint()));
  const cd tr = rho.trace();
  if (std::abs(tr) < 1e-9)
    throw NumericalError("steady_state: null vector of the generator is traceless");
  rho /= tr;
  return rho;
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  return a.exp();
}

double rk4_step_limit(const Liouvillian& L) {
  double rate = 0.0;
  if (L.static_part.size() > 0) rate = L.static_part.cwiseAbs().maxCoeff();
  if (L.time_dependent) {
    const double drive = L.drive_part.cwiseAbs().maxCoeff() * L.pulse.amplitude();
    rate = std::max(rate, drive);
    double cap = L.pulse.fwhm / 50.0;
    if (rate > 0.0) cap = std::min(cap, 0.1 / rate);
    return cap;
  }
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.1 / rate;
}

}  // namespace coopsim
