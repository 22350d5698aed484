#include "coopsim/pulsed_engine.hpp"

#include "coopsim/dynamics.hpp"
#include "coopsim/emission.hpp"
#include "coopsim/operators.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace coopsim {

namespace {

Vector apply_generator(const Liouvillian& L, double t, const Vector& v) {
  const double env = L.pulse.envelope(t);
  if (env == 0.0) return L.static_part * v;
  return L.static_part * v + env * (L.drive_part * v);
}

Vector rk4_step(const Liouvillian& L, double t, double h, const Vector& v) {
  const Vector k1 = apply_generator(L, t, v);
  const Vector k2 = apply_generator(L, t + 0.5 * h, v + (0.5 * h) * k1);
  const Vector k3 = apply_generator(L, t + 0.5 * h, v + (0.5 * h) * k2);
  const Vector k4 = apply_generator(L, t + h, v + h * k3);
  return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename Array>
auto lerp_uniform(const Array& vals, double h, double x) {
  double u = x / h;
  long k = long(std::floor(u));
  if (k < 0) k = 0;
  if (k > long(vals.size()) - 2) k = long(vals.size()) - 2;
  const double f = u - double(k);
  return (1.0 - f) * vals[k] + f * vals[k + 1];
}

double lerp_nodes(const std::vector<double>& x, const std::vector<double>& y, double t) {
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  std::size_t lo = 0, hi = x.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (x[mid] <= t ? lo : hi) = mid;
  }
  const double f = (t - x[lo]) / (x[hi] - x[lo]);
  return (1.0 - f) * y[lo] + f * y[hi];
}

// Interpolates a correlator row known on a fine initial segment (spacing
// h_fine, covering [0, delta]) followed by coarse samples at delta + m*dtau.
template <typename Scalar>
Scalar row_value(const std::vector<Scalar>& fine, double h_fine, double delta,
                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& coarse, double dtau,
                 double tau) {
  if (tau <= delta && fine.size() > 1) {
    double u = tau / h_fine;
    long k = long(std::floor(u));
    if (k > long(fine.size()) - 2) k = long(fine.size()) - 2;
    if (k < 0) k = 0;
    const double f = u - double(k);
    return (1.0 - f) * fine[std::size_t(k)] + f * fine[std::size_t(k) + 1];
  }
  double u = (tau - delta) / dtau;
  long k = long(std::floor(u));
  if (k < 0) k = 0;
  if (k > coarse.size() - 2) k = coarse.size() - 2;
  const double f = u - double(k);
  return (1.0 - f) * coarse[k] + f * coarse[k + 1];
}

}  // namespace

PulsedSolution solve_pulsed(Model model, const EmitterParams& p, const DriveProtocol& drive,
                            double tau_max, double dtau, bool with_g1) {
  if (drive.kind != DriveProtocol::Kind::CoherentPulsed)
    throw std::invalid_argument("solve_pulsed: drive must be pulsed");
  if (!(tau_max > 0.0) || !(dtau > 0.0))
    throw std::invalid_argument("solve_pulsed: tau_max and dtau must be positive");

  const double period = drive.period;
  const Pulse pulse{drive.pulse_area, drive.pulse_fwhm, drive.period};
  if (pulse.end() >= period)
    throw ConfigError("period too short: the pulse support exceeds the repetition period");
  if (tau_max > 0.5 * period * (1.0 + 1e-9))
    throw std::invalid_argument("solve_pulsed: tau_max must not exceed half the period");

  const DipoleSet dip = dipole_set(model, p);
  const int dim = hilbert_dim(model);
  const int dsq = dim * dim;
  const Matrix m_op = dip.measure();
  const Vector m_tf = vectorize(m_op);

  const Liouvillian L_ref = build_generator(model, p, drive, 1);
  const double t_end = pulse.end();
  const double h_target = std::min(pulse.fwhm / 80.0, rk4_step_limit(L_ref));
  const int n_rk = int(std::ceil(t_end / h_target));
  const double h_rk = t_end / double(n_rk);
  const int n_st = int(std::ceil((period - t_end) / 0.004));
  const double ht = (period - t_end) / double(n_st);
  const int n_tau = std::max(2, int(std::llround(tau_max / dtau)));
  const double dt_tau = tau_max / double(n_tau);

  PulsedSolution sol;
  sol.rate_scale = dip.rate;
  sol.tau = Grid(n_tau + 1);
  for (int m = 0; m <= n_tau; ++m) sol.tau[m] = dt_tau * double(m);

  const int n_nodes = n_rk + 1 + n_st;
  sol.t = Grid(n_nodes);
  for (int i = 0; i <= n_rk; ++i) sol.t[i] = h_rk * double(i);
  for (int j = 1; j <= n_st; ++j) sol.t[n_rk + j] = t_end + ht * double(j);

  // Static propagators and adjoint correlator grids are branch-independent:
  // the branch sign only enters the drive part.
  const Matrix& S = L_ref.static_part;
  const Matrix E_ht = expm(Matrix(S * ht));
  const Matrix E_dt_adj = expm(Matrix(S * dt_tau)).adjoint();

  Eigen::MatrixXcd mu_rows(n_tau + 1, dsq);
  {
    Vector mu = m_tf;
    for (int m = 0; m <= n_tau; ++m) {
      mu_rows.row(m) = mu.adjoint();
      if (m < n_tau) mu = E_dt_adj * mu;
    }
  }

  const std::size_t n_chan = dip.channels.size();
  std::vector<Matrix> a_left(n_chan);
  std::vector<Vector> a_tf(n_chan);
  Matrix jump_sup = Matrix::Zero(dsq, dsq);
  for (std::size_t c = 0; c < n_chan; ++c) {
    const Matrix& a = dip.channels[c].first;
    const double w = dip.channels[c].second;
    a_left[c] = w * kron(Matrix::Identity(dim, dim), a);
    a_tf[c] = w * vectorize(a);
    jump_sup += (w * w) * kron(a.conjugate(), a);
  }

  std::vector<Eigen::MatrixXcd> nu_rows;
  std::vector<int> sub_idx;
  if (with_g1) {
    for (std::size_t c = 0; c < n_chan; ++c) {
      Eigen::MatrixXcd rows(n_tau + 1, dsq);
      Vector nu = a_tf[c];
      for (int m = 0; m <= n_tau; ++m) {
        rows.row(m) = nu.adjoint();
        if (m < n_tau) nu = E_dt_adj * nu;
      }
      nu_rows.push_back(std::move(rows));
    }
    for (int i = 0; i <= n_rk; i += 2) sub_idx.push_back(i);
    if (sub_idx.back() != n_rk) sub_idx.push_back(n_rk);
    for (int j = 2; j <= n_st; j += 2) sub_idx.push_back(n_rk + j);
    if (sub_idx.back() != n_nodes - 1) sub_idx.push_back(n_nodes - 1);
  }
  const std::size_t n_sub = sub_idx.size();

  const std::vector<int> branches =
      model == Model::Single ? std::vector<int>{1} : std::vector<int>{1, -1};
  const double nb = double(branches.size());

  Grid c0 = Grid::Zero(n_tau + 1);
  Grid intensity = Grid::Zero(n_nodes);
  std::vector<Eigen::MatrixXcd> g1_sum(
      n_chan, Eigen::MatrixXcd::Zero(Eigen::Index(n_sub), n_tau + 1));

  for (int b : branches) {
    const Liouvillian L = build_generator(model, p, drive, b);

    std::vector<Vector> rho_nodes(n_nodes);
    {
      Matrix rho0 = Matrix::Zero(dim, dim);
      rho0(0, 0) = 1.0;
      Vector v = vectorize(rho0);
      for (int i = 0; i <= n_rk; ++i) {
        rho_nodes[i] = v;
        if (i < n_rk) v = rk4_step(L, h_rk * double(i), h_rk, v);
      }
      for (int j = 1; j <= n_st; ++j) {
        v = E_ht * v;
        rho_nodes[n_rk + j] = v;
      }
    }
    for (int i = 0; i < n_nodes; ++i) intensity[i] += std::real(m_tf.dot(rho_nodes[i])) / nb;

    // central peak, emission times after the pulse: one adjoint contraction of
    // the time-integrated state
    Vector sigma_after = Vector::Zero(dsq);
    for (int j = 0; j <= n_st; ++j) {
      const double w = (j == 0 || j == n_st) ? 0.5 * ht : ht;
      sigma_after += w * rho_nodes[n_rk + j];
    }
    c0 += (mu_rows * (jump_sup * sigma_after)).real().array() / nb;

    // central peak, emission times inside the pulse: each row marches through
    // the rest of the drive, then follows the precomputed adjoint grid
    for (int i = 0; i <= n_rk; ++i) {
      Vector chi = jump_sup * rho_nodes[i];
      std::vector<double> fine(std::size_t(n_rk - i) + 1);
      for (int q = 0; q <= n_rk - i; ++q) {
        fine[std::size_t(q)] = std::real(m_tf.dot(chi));
        if (q < n_rk - i) chi = rk4_step(L, h_rk * double(i + q), h_rk, chi);
      }
      const Eigen::VectorXcd coarse_c = mu_rows * chi;
      const Eigen::VectorXd coarse = coarse_c.real();
      const double delta = h_rk * double(n_rk - i);
      const double w = ((i == 0 || i == n_rk) ? 0.5 * h_rk : h_rk) / nb;
      for (int m = 0; m <= n_tau; ++m)
        c0[m] += w * row_value(fine, h_rk, delta, coarse, dt_tau, sol.tau[m]);
    }

    if (with_g1) {
      for (std::size_t c = 0; c < n_chan; ++c) {
        for (std::size_t r = 0; r < n_sub; ++r) {
          const int node = sub_idx[r];
          Vector phi = a_left[c] * rho_nodes[node];
          if (node >= n_rk) {
            g1_sum[c].row(Eigen::Index(r)) += (nu_rows[c] * phi).transpose();
            continue;
          }
          std::vector<cd> fine(std::size_t(n_rk - node) + 1);
          for (int q = 0; q <= n_rk - node; ++q) {
            fine[std::size_t(q)] = a_tf[c].dot(phi);
            if (q < n_rk - node) phi = rk4_step(L, h_rk * double(node + q), h_rk, phi);
          }
          const Eigen::VectorXcd coarse = nu_rows[c] * phi;
          const double delta = h_rk * double(n_rk - node);
          for (int m = 0; m <= n_tau; ++m)
            g1_sum[c](Eigen::Index(r), m) +=
                row_value(fine, h_rk, delta, coarse, dt_tau, sol.tau[m]);
        }
      }
    }
  }

  sol.central = c0;
  sol.intensity = intensity;
  sol.intensity_area = trapezoid(sol.t, intensity);

  if (with_g1) {
    std::vector<double> w_sub(n_sub, 0.0);
    for (std::size_t r = 0; r < n_sub; ++r) {
      const double lo = r == 0 ? sol.t[sub_idx[0]] : sol.t[sub_idx[r - 1]];
      const double hi = r == n_sub - 1 ? sol.t[sub_idx[r]] : sol.t[sub_idx[r + 1]];
      w_sub[r] = 0.5 * (hi - lo);
    }
    Grid j_tau = Grid::Zero(n_tau + 1);
    for (std::size_t c = 0; c < n_chan; ++c) {
      for (std::size_t r = 0; r < n_sub; ++r)
        j_tau += w_sub[r] * (g1_sum[c].row(Eigen::Index(r)) / nb).cwiseAbs2().transpose().array();
    }
    sol.coherence_sq = j_tau;
  }

  // side peak: autocorrelation of the branch-averaged intensity, on a uniform
  // resampling of the merged time grid
  {
    const int n_u = int(std::ceil(period / 0.002));
    const double du = period / double(n_u);
    std::vector<double> t_std(sol.t.data(), sol.t.data() + n_nodes);
    std::vector<double> i_std(intensity.data(), intensity.data() + n_nodes);
    std::vector<double> iu(std::size_t(n_u) + 1);
    for (int k = 0; k <= n_u; ++k) iu[std::size_t(k)] = lerp_nodes(t_std, i_std, du * double(k));

    const int k_max = std::min(n_u, int(std::ceil(tau_max / du)) + 1);
    std::vector<double> corr(std::size_t(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
      double s = 0.0;
      for (int j = 0; j + k <= n_u; ++j) s += iu[std::size_t(j)] * iu[std::size_t(j + k)];
      s -= 0.5 * (iu[0] * iu[std::size_t(k)] + iu[std::size_t(n_u - k)] * iu[std::size_t(n_u)]);
      corr[std::size_t(k)] = s * du;
    }
    sol.side = Grid(n_tau + 1);
    for (int m = 0; m <= n_tau; ++m) sol.side[m] = lerp_uniform(corr, du, sol.tau[m]);
  }

  return sol;
}

PulsedHistogram assemble_cluster(const PulsedSolution& sol, const Grid& central, const Grid& side,
                                 double period, double tau_span) {
  if (tau_span < period)
    throw ConfigError("tau_span must cover at least one repetition period");
  if (central.size() != sol.tau.size() || side.size() != sol.tau.size())
    throw std::invalid_argument("assemble_cluster: peak shapes do not match the delay grid");
  const double dt = sol.tau[1] - sol.tau[0];
  if (sol.tau[sol.tau.size() - 1] < 0.5 * period * (1.0 - 1e-9))
    throw std::invalid_argument("assemble_cluster: solution covers less than half a period");

  double side_area = 0.0;
  for (Eigen::Index m = 0; m + 1 < sol.tau.size(); ++m)
    side_area += 0.5 * dt * (side[m] + side[m + 1]);
  side_area *= 2.0;
  if (!(side_area > 0.0)) throw NumericalError("assemble_cluster: side peak has no area");

  const int n_half = int(std::floor(0.5 * tau_span / dt * (1.0 + 1e-12)));
  PulsedHistogram h;
  h.period = period;
  h.n_side_peaks = 2 * int(std::floor(0.5 * tau_span / period * (1.0 + 1e-12)));
  h.tau = Grid(2 * n_half + 1);
  h.values = Grid(2 * n_half + 1);
  for (int k = -n_half; k <= n_half; ++k) {
    const double tau = dt * double(k);
    const double n = std::round(tau / period);
    const double u = std::abs(tau - n * period);
    const Grid& src = n == 0.0 ? central : side;
    h.tau[k + n_half] = tau;
    h.values[k + n_half] = lerp_uniform(src, dt, u) / side_area;
  }
  return h;
}

}  // namespace coopsim
