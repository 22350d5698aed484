#include "coopsim/correlators.hpp"

#include "coopsim/emission.hpp"
#include "coopsim/operators.hpp"
#include "coopsim/pulsed_engine.hpp"

#include <cmath>

namespace coopsim {

namespace {

// Tr[M X] as a linear functional of vec(X); Eigen's dot conjugates its left
// operand, so the stored vector is vec(M^dag).
Vector trace_functional(const Matrix& m) { return vectorize(Matrix(m.adjoint())); }

Matrix jump_projected(const DipoleSet& dip, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& [a, w] : dip.channels) out += (w * w) * (a * rho * a.adjoint());
  return out;
}

// Values of a stationary correlator on an arbitrary uniform grid, marched once
// over the half grid of |tau| multiples and looked up by index.
struct HalfMarch {
  double h = 0.0;
  int points = 0;

  explicit HalfMarch(const Grid& tau_grid) {
    h = grid_spacing(tau_grid, "tau grid");
    double t_abs = std::max(std::abs(tau_grid[0]), std::abs(tau_grid[tau_grid.size() - 1]));
    points = int(std::llround(t_abs / h)) + 1;
    for (Eigen::Index k = 0; k < tau_grid.size(); ++k) {
      const double r = std::abs(tau_grid[k]) / h;
      if (std::abs(r - std::round(r)) > 1e-6)
        throw std::invalid_argument("tau grid must be symmetric about zero");
    }
  }

  int index(double tau) const { return int(std::llround(std::abs(tau) / h)); }
};

}  // namespace

double analytic_g2_cw(double gamma, double gamma_d, double tau) {
  const double t = std::abs(tau);
  return 1.0 - 0.5 * (std::exp(-2.0 * gamma * t) - std::exp(-(2.0 * gamma + gamma_d) * t));
}

double analytic_g2_pulsed_peak(double gamma, double gamma_d, double tau) {
  const double t = std::abs(tau);
  return 0.5 * (std::exp(-gamma * t) + std::exp(-(gamma + gamma_d) * t));
}

CorrelationTrace two_time_g2(Model model, const EmitterParams& p, const DriveProtocol& drive,
                             const Matrix& rho0, double t1, const Grid& tau_grid) {
  const Liouvillian L = build_generator(model, p, drive);
  if (rho0.rows() != L.dim || rho0.cols() != L.dim)
    throw std::invalid_argument("two_time_g2: state dimension does not match the model");
  if (tau_grid[0] < 0.0)
    throw std::invalid_argument("two_time_g2: delays must be nonnegative");
  const double h = grid_spacing(tau_grid, "tau grid");

  const DipoleSet dip = dipole_set(model, p);
  const Vector tf = trace_functional(dip.measure());
  const Matrix rho_t1 = propagate(rho0, L, 0.0, t1);
  Matrix pseudo = jump_projected(dip, rho_t1);
  pseudo = propagate(pseudo, L, t1, t1 + tau_grid[0]);

  Grid values(tau_grid.size());
  if (!L.time_dependent) {
    const Matrix step = expm(Matrix(L.static_part * h));
    Vector v = vectorize(pseudo);
    for (Eigen::Index k = 0; k < tau_grid.size(); ++k) {
      values[k] = std::real(tf.dot(v));
      if (k + 1 < tau_grid.size()) v = step * v;
    }
  } else {
    Matrix state = pseudo;
    for (Eigen::Index k = 0; k < tau_grid.size(); ++k) {
      values[k] = std::real(tf.dot(vectorize(state)));
      if (k + 1 < tau_grid.size())
        state = propagate(state, L, t1 + tau_grid[k], t1 + tau_grid[k + 1]);
    }
  }
  return {tau_grid, values, Normalization::Raw};
}

CorrelationTrace g2_cw(Model model, const EmitterParams& p, const DriveProtocol& drive,
                       const Grid& tau_grid) {
  if (drive.kind == DriveProtocol::Kind::CoherentPulsed)
    throw std::invalid_argument("g2_cw: drive must be continuous");
  const Liouvillian L = build_generator(model, p, drive);
  const Matrix rho_ss = steady_state(L);
  const DipoleSet dip = dipole_set(model, p);
  const Matrix m_op = dip.measure();
  const double i_ss = std::real((m_op * rho_ss).trace());
  if (i_ss <= 0.0) throw NumericalError("g2_cw: steady state emits no light");

  const HalfMarch half(tau_grid);
  const Vector tf = trace_functional(m_op);
  const Matrix step = expm(Matrix(L.static_part * half.h));
  Vector v = vectorize(jump_projected(dip, rho_ss));
  Grid g_half(half.points);
  for (int k = 0; k < half.points; ++k) {
    g_half[k] = std::real(tf.dot(v)) / (i_ss * i_ss);
    if (k + 1 < half.points) v = step * v;
  }

  Grid values(tau_grid.size());
  for (Eigen::Index k = 0; k < tau_grid.size(); ++k) values[k] = g_half[half.index(tau_grid[k])];
  return {tau_grid, values, Normalization::SteadyStateSquared};
}

CoherenceTrace g1_cw(Model model, const EmitterParams& p, const DriveProtocol& drive,
                     const Grid& tau_grid) {
  if (drive.kind == DriveProtocol::Kind::CoherentPulsed)
    throw std::invalid_argument("g1_cw: drive must be continuous");
  const Liouvillian L = build_generator(model, p, drive);
  const Matrix rho_ss = steady_state(L);
  const DipoleSet dip = dipole_set(model, p);
  const double i_ss = std::real((dip.measure() * rho_ss).trace());
  if (i_ss <= 0.0) throw NumericalError("g1_cw: steady state emits no light");

  const HalfMarch half(tau_grid);
  const Matrix step = expm(Matrix(L.static_part * half.h));
  Eigen::ArrayXcd g_half = Eigen::ArrayXcd::Zero(half.points);
  for (const auto& [a, w] : dip.channels) {
    const Vector tf = (w * w) * vectorize(a);
    Vector v = vectorize(Matrix(a * rho_ss));
    for (int k = 0; k < half.points; ++k) {
      g_half[k] += tf.dot(v) / i_ss;
      if (k + 1 < half.points) v = step * v;
    }
  }

  Eigen::ArrayXcd values(tau_grid.size());
  for (Eigen::Index k = 0; k < tau_grid.size(); ++k) {
    const cd g = g_half[half.index(tau_grid[k])];
    values[k] = tau_grid[k] < 0.0 ? std::conj(g) : g;
  }
  return {tau_grid, values, Normalization::SteadyStateSquared};
}

PulsedHistogram g2_pulsed(Model model, const EmitterParams& p, const DriveProtocol& pulse,
                          double tau_span) {
  if (pulse.kind != DriveProtocol::Kind::CoherentPulsed)
    throw std::invalid_argument("g2_pulsed: drive must be pulsed");
  if (tau_span < pulse.period)
    throw ConfigError("tau_span must cover at least one repetition period");
  const PulsedSolution sol = solve_pulsed(model, p, pulse, 0.5 * pulse.period, 0.0025, false);
  return assemble_cluster(sol, sol.central, sol.side, pulse.period, tau_span);
}

namespace {

double window_area(const PulsedHistogram& h, double lo, double hi) {
  const double spacing = h.tau[1] - h.tau[0];
  const double eps = 1e-9 * spacing;
  if (lo < h.tau[0] - eps || hi > h.tau[h.tau.size() - 1] + eps)
    throw std::invalid_argument("integrate_peak: window extends beyond the histogram");
  Eigen::Index first = 0;
  while (first < h.tau.size() && h.tau[first] < lo - eps) ++first;
  Eigen::Index last = h.tau.size() - 1;
  while (last > 0 && h.tau[last] > hi + eps) --last;
  double area = 0.0;
  for (Eigen::Index i = first; i < last; ++i)
    area += 0.5 * (h.tau[i + 1] - h.tau[i]) * (h.values[i] + h.values[i + 1]);
  return area;
}

}  // namespace

double integrate_peak(const PulsedHistogram& h, double center, double window) {
  if (!(window > 0.0)) throw std::invalid_argument("integrate_peak: window must be positive");
  if (window > h.period)
    throw std::invalid_argument("integrate_peak: window must not exceed the period");
  const double n = std::round(center / h.period);
  if (std::abs(center - n * h.period) + 0.5 * window > 0.5 * h.period * (1.0 + 1e-9))
    throw std::invalid_argument("integrate_peak: window overlaps a neighboring peak");

  const double peak_area = window_area(h, center - 0.5 * window, center + 0.5 * window);

  const double lo = h.tau[0], hi = h.tau[h.tau.size() - 1];
  double side_sum = 0.0;
  int side_count = 0;
  const int n_max = int(std::floor(hi / h.period));
  for (int m = -n_max; m <= n_max; ++m) {
    if (m == 0 || m == int(n)) continue;
    const double c = m * h.period;
    if (c - 0.5 * window < lo || c + 0.5 * window > hi) continue;
    side_sum += window_area(h, c - 0.5 * window, c + 0.5 * window);
    ++side_count;
  }
  if (side_count == 0)
    throw std::invalid_argument("integrate_peak: no side peak available for normalization");
  return peak_area / (side_sum / double(side_count));
}

CorrelationTrace time_resolved_intensity(Model model, const EmitterParams& p,
                                         const DriveProtocol& pulse, const Grid& t_grid) {
  if (pulse.kind != DriveProtocol::Kind::CoherentPulsed)
    throw std::invalid_argument("time_resolved_intensity: drive must be pulsed");
  if (t_grid[0] < 0.0)
    throw std::invalid_argument("time_resolved_intensity: times must be nonnegative");
  grid_spacing(t_grid, "time grid");

  const DipoleSet dip = dipole_set(model, p);
  const Vector tf = trace_functional(dip.measure());
  const std::vector<int> branches =
      model == Model::Single ? std::vector<int>{1} : std::vector<int>{1, -1};

  Grid values = Grid::Zero(t_grid.size());
  for (int b : branches) {
    const Liouvillian L = build_generator(model, p, pulse, b);
    Matrix rho = Matrix::Zero(L.dim, L.dim);
    rho(0, 0) = 1.0;
    rho = propagate(rho, L, 0.0, t_grid[0]);
    for (Eigen::Index k = 0; k < t_grid.size(); ++k) {
      values[k] += std::real(tf.dot(vectorize(rho)));
      if (k + 1 < t_grid.size()) rho = propagate(rho, L, t_grid[k], t_grid[k + 1]);
    }
  }
  values *= dip.rate / double(branches.size());
  return {t_grid, values, Normalization::Raw};
}

CorrelationTrace time_resolved_intensity(Model model, const EmitterParams& p, const Matrix& rho0,
                                         const Grid& t_grid) {
  if (t_grid[0] < 0.0)
    throw std::invalid_argument("time_resolved_intensity: times must be nonnegative");
  const double h = grid_spacing(t_grid, "time grid");

  const Liouvillian L = build_generator(model, p, DriveProtocol::incoherent_cw());
  if (rho0.rows() != L.dim || rho0.cols() != L.dim)
    throw std::invalid_argument("time_resolved_intensity: state dimension does not match");
  const DipoleSet dip = dipole_set(model, p);
  const Vector tf = trace_functional(dip.measure());

  const Matrix step = expm(Matrix(L.static_part * h));
  Vector v = vectorize(propagate(rho0, L, 0.0, t_grid[0]));
  Grid values(t_grid.size());
  for (Eigen::Index k = 0; k < t_grid.size(); ++k) {
    values[k] = dip.rate * std::real(tf.dot(v));
    if (k + 1 < t_grid.size()) v = step * v;
  }
  return {t_grid, values, Normalization::Raw};
}

Grid default_tau_grid(const EmitterParams& p, int points) {
  if (!(p.gamma > 0.0))
    throw std::invalid_argument("default_tau_grid: gamma must be positive");
  return uniform_grid(0.0, 5.0 / p.gamma, points);
}

Grid uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  if (!(hi > lo)) throw std::invalid_argument("uniform_grid: hi must exceed lo");
  Grid g(points);
  const double h = (hi - lo) / double(points - 1);
  for (int i = 0; i < points; ++i) g[i] = lo + h * double(i);
  return g;
}

Grid mirror_grid(const Grid& half) {
  if (half.size() < 2 || half[0] != 0.0)
    throw std::invalid_argument("mirror_grid: half grid must start at zero");
  const Eigen::Index n = half.size();
  Grid g(2 * n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i) g[i] = -half[n - 1 - i];
  for (Eigen::Index i = 0; i < n; ++i) g[n - 1 + i] = half[i];
  return g;
}

Grid mirror_values(const Grid& half) {
  if (half.size() < 1) throw std::invalid_argument("mirror_values: empty input");
  const Eigen::Index n = half.size();
  Grid g(2 * n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i) g[i] = half[n - 1 - i];
  for (Eigen::Index i = 0; i < n; ++i) g[n - 1 + i] = half[i];
  return g;
}

}  // namespace coopsim
