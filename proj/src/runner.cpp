#include "coopsim/runner.hpp"

#include "coopsim/config.hpp"
#include "coopsim/correlators.hpp"
#include "coopsim/pulsed_engine.hpp"
#include "coopsim/tracefile.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

namespace coopsim {

namespace {

std::string out_path(const RunOptions& opt, const char* name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double resolved_tau_max(const ExperimentConfig& cfg) {
  return cfg.tau_max > 0.0 ? cfg.tau_max : 5.0 / cfg.params.gamma;
}

double resolved_tau_span(const ExperimentConfig& cfg) {
  return cfg.tau_span > 0.0 ? cfg.tau_span : 3.0 * cfg.drive.period;
}

void require_cw(const ExperimentConfig& cfg, const char* cmd) {
  if (cfg.drive.kind == DriveProtocol::Kind::CoherentPulsed)
    throw ConfigError(std::string(cmd) + " needs a CW drive");
}

void require_pulsed(const ExperimentConfig& cfg, const char* cmd) {
  if (cfg.drive.kind != DriveProtocol::Kind::CoherentPulsed)
    throw ConfigError(std::string(cmd) + " needs drive = pulsed");
}

int cmd_g2_cw(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
              std::ostream& out) {
  require_cw(cfg, "g2-cw");
  const Grid half = uniform_grid(0.0, resolved_tau_max(cfg), cfg.tau_points);
  const CorrelationTrace g2 = g2_cw(cfg.model, cfg.params, cfg.drive, half);
  const Grid tau = mirror_grid(g2.tau);
  const Grid ideal = mirror_values(g2.values);
  const Grid smeared = convolve_grid(tau, ideal, cfg.irf, EdgeMode::Reflect);
  const std::string path = out_path(opt, "g2_cw.csv");
  write_trace(path, hash, {"delay_ns", "g2", "g2_irf"}, {&tau, &ideal, &smeared});
  if (!opt.quiet) {
    out << "g2(0) = " << g2.values[0] << " ideal, " << smeared[tau.size() / 2] << " with IRF\n";
    out << "1/e width = " << 1.0 / (2.0 * cfg.params.gamma + cfg.params.gamma_d) << " ns\n";
    out << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_g2_pulsed(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
                  std::ostream& out) {
  require_pulsed(cfg, "g2-pulsed");
  const PulsedHistogram hist =
      g2_pulsed(cfg.model, cfg.params, cfg.drive, resolved_tau_span(cfg));
  const PulsedHistogram smeared = convolve(hist, cfg.irf);
  const std::string path = out_path(opt, "g2_pulsed.csv");
  write_trace(path, hash, {"delay_ns", "coincidences", "coincidences_irf"},
              {&hist.tau, &hist.values, &smeared.values});
  if (!opt.quiet) {
    for (const double w : cfg.windows)
      out << "g2(0), " << fmt_g(w) << " ns window: " << integrate_peak(hist, 0.0, w) << "\n";
    out << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_intensity(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
                  std::ostream& out) {
  const Grid t = uniform_grid(0.0, cfg.t_max, cfg.t_points);
  CorrelationTrace trace;
  if (cfg.initial_state == "ee") {
    const int dim = hilbert_dim(cfg.model);
    Matrix rho0 = Matrix::Zero(dim, dim);
    rho0(dim - 1, dim - 1) = 1.0;
    trace = time_resolved_intensity(cfg.model, cfg.params, rho0, t);
  } else {
    require_pulsed(cfg, "intensity from the ground state");
    trace = time_resolved_intensity(cfg.model, cfg.params, cfg.drive, t);
  }
  const double tail = exponential_tail_fit(trace, cfg.tail_start);
  const std::string path = out_path(opt, "intensity.csv");
  write_trace(path, hash, {"time_ns", "intensity_per_ns"}, {&trace.tau, &trace.values});
  if (!opt.quiet) {
    out << "tail decay time beyond " << fmt_g(cfg.tail_start) << " ns: " << tail << " ns\n";
    out << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_hom_cw(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
               std::ostream& out) {
  require_cw(cfg, "hom-cw");
  const Grid half = uniform_grid(0.0, resolved_tau_max(cfg), cfg.tau_points);
  const CorrelationTrace g2 = g2_cw(cfg.model, cfg.params, cfg.drive, half);
  const CoherenceTrace g1 = g1_cw(cfg.model, cfg.params, cfg.drive, half);
  HomConfig perp_cfg = cfg.hom;
  perp_cfg.polarization_overlap = 0.0;
  const CorrelationTrace par_h = hom_cross_correlation(g2, g1, cfg.hom);
  const CorrelationTrace perp_h = hom_cross_correlation(g2, g1, perp_cfg);

  CorrelationTrace par, perp;
  par.tau = perp.tau = mirror_grid(half);
  par.values = mirror_values(par_h.values);
  perp.values = mirror_values(perp_h.values);
  const CorrelationTrace vis = visibility(par, perp);
  const double ctw = coherence_time_window(vis);

  const std::string path = out_path(opt, "hom_cw.csv");
  write_trace(path, hash, {"delay_ns", "g2_hom_parallel", "g2_hom_perpendicular", "visibility"},
              {&par.tau, &par.values, &perp.values, &vis.values});
  if (!opt.quiet) {
    out << "V(0) = " << vis.values[vis.values.size() / 2]
        << ", coherence time window = " << ctw << " ns\n";
    out << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_hom_pulsed(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
                   std::ostream& out) {
  require_pulsed(cfg, "hom-pulsed");
  HomConfig perp_cfg = cfg.hom;
  perp_cfg.polarization_overlap = 0.0;
  const PulsedHistogram par = hom_pulsed(cfg.model, cfg.params, cfg.drive, cfg.hom);
  const PulsedHistogram perp = hom_pulsed(cfg.model, cfg.params, cfg.drive, perp_cfg);
  const PulsedHistogram par_s = convolve(par, cfg.irf);
  const PulsedHistogram perp_s = convolve(perp, cfg.irf);

  const std::string path = out_path(opt, "hom_pulsed.csv");
  write_trace(path, hash,
              {"delay_ns", "parallel", "perpendicular", "parallel_irf", "perpendicular_irf"},
              {&par.tau, &par.values, &perp.values, &par_s.values, &perp_s.values});
  if (!opt.quiet) {
    for (const double w : cfg.windows) {
      const double v = 1.0 - integrate_peak(par_s, 0.0, w) / integrate_peak(perp_s, 0.0, w);
      out << "V, " << fmt_g(w) << " ns window: " << v << "\n";
    }
    out << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
              std::ostream& out) {
  if (cfg.sweep_parameter.empty() || cfg.sweep_values.empty())
    throw ConfigError("sweep needs sweep_parameter and sweep_values");
  const bool pulsed = cfg.drive.kind == DriveProtocol::Kind::CoherentPulsed;
  const std::size_t n = cfg.sweep_values.size();

  std::vector<std::string> columns{cfg.sweep_parameter};
  if (pulsed) {
    for (const double w : cfg.windows) columns.push_back("g2_" + fmt_g(w) + "ns");
    columns.push_back("photons_per_pulse");
  } else {
    columns.push_back("g2_zero_irf");
  }

  std::vector<std::vector<double>> rows(n);
  std::atomic<std::size_t> cursor{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  const auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= n) return;
      try {
        ExperimentConfig point = cfg;
        set_numeric_key(point, cfg.sweep_parameter, cfg.sweep_values[i]);
        point.params.validate();
        point.drive.validate();
        std::vector<double> row{cfg.sweep_values[i]};
        if (pulsed) {
          const PulsedSolution sol = solve_pulsed(point.model, point.params, point.drive,
                                                  0.5 * point.drive.period, 0.0025, false);
          const PulsedHistogram hist = assemble_cluster(sol, sol.central, sol.side,
                                                        point.drive.period,
                                                        resolved_tau_span(point));
          for (const double w : point.windows) row.push_back(integrate_peak(hist, 0.0, w));
          row.push_back(sol.rate_scale * sol.intensity_area);
        } else {
          const Grid half = uniform_grid(0.0, resolved_tau_max(point), point.tau_points);
          const CorrelationTrace g2 = g2_cw(point.model, point.params, point.drive, half);
          const Grid tau = mirror_grid(g2.tau);
          const Grid smeared =
              convolve_grid(tau, mirror_values(g2.values), point.irf, EdgeMode::Reflect);
          row.push_back(smeared[tau.size() / 2]);
        }
        rows[i] = std::move(row);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int workers = std::max(1, opt.workers);
  if (workers == 1 || n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(workers, int(n)); ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<Grid> series(columns.size(), Grid(Eigen::Index(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < columns.size(); ++c) series[c][Eigen::Index(i)] = rows[i][c];
  std::vector<const Grid*> data;
  for (const Grid& g : series) data.push_back(&g);

  const std::string path = out_path(opt, "sweep.csv");
  write_trace(path, hash, columns, data);
  if (!opt.quiet) {
    for (std::size_t i = 0; i < n; ++i)
      out << cfg.sweep_parameter << " = " << fmt_g(rows[i][0]) << ": " << columns[1] << " = "
          << rows[i][1] << "\n";
    out << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_fit_cw(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
               std::ostream& out) {
  Histogram hist;
  if (!cfg.input_path.empty()) {
    hist = load_histogram(cfg.input_path);
  } else {
    const Grid half = uniform_grid(0.0, resolved_tau_max(cfg), (cfg.tau_points + 1) / 2);
    Grid shape(half.size());
    for (Eigen::Index i = 0; i < half.size(); ++i)
      shape[i] = analytic_g2_cw(cfg.params.gamma, cfg.params.gamma_d, half[i]);
    CorrelationTrace truth;
    truth.tau = mirror_grid(half);
    truth.values = convolve_grid(truth.tau, mirror_values(shape), cfg.irf, EdgeMode::Reflect);
    hist = sample_histogram(truth, cfg.counts, cfg.seed);
  }

  const FitResult res = fit_g2_cw(hist, cfg.irf, cfg.fit_init);
  const Grid curve = fit_model_g2_cw(hist.tau, cfg.irf, res.gamma, res.gamma_d, res.amplitude);
  const std::string path = out_path(opt, "fit_cw.csv");
  write_trace(path, hash, {"delay_ns", "counts", "fit"}, {&hist.tau, &hist.counts, &curve});
  if (!opt.quiet) {
    out << "gamma = " << res.gamma << " +- " << res.gamma_err << " /ns (lifetime "
        << 1.0 / res.gamma << " ns)\n";
    out << "gamma_d = " << res.gamma_d << " +- " << res.gamma_d_err << " /ns (dephasing time "
        << 1.0 / res.gamma_d << " ns)\n";
    out << "dip time constant 1/(2 gamma + gamma_d) = "
        << 1.0 / (2.0 * res.gamma + res.gamma_d) << " ns\n";
    out << "iterations = " << res.iterations << ", residual = " << res.residual_norm << "\n";
    out << "wrote " << path << "\n";
  }
  if (!res.converged) {
    std::cerr << "error: fit did not converge\n";
    return 2;
  }
  return 0;
}

int cmd_fit_pulsed(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
                   std::ostream& out) {
  const double gamma_fixed = cfg.fixed_gamma > 0.0 ? cfg.fixed_gamma : cfg.params.gamma;
  Histogram hist;
  if (!cfg.input_path.empty()) {
    hist = load_histogram(cfg.input_path);
  } else {
    const Grid half = uniform_grid(0.0, resolved_tau_max(cfg), (cfg.tau_points + 1) / 2);
    Grid shape(half.size());
    for (Eigen::Index i = 0; i < half.size(); ++i)
      shape[i] = analytic_g2_pulsed_peak(gamma_fixed, cfg.params.gamma_d, half[i]);
    CorrelationTrace truth;
    truth.tau = mirror_grid(half);
    truth.values = convolve_grid(truth.tau, mirror_values(shape), cfg.irf, EdgeMode::Zero);
    hist = sample_histogram(truth, cfg.counts, cfg.seed);
  }

  const FitResult res = fit_g2_pulsed_peak(hist, cfg.irf, gamma_fixed, cfg.fit_init);
  const Grid curve = fit_model_g2_pulsed_peak(hist.tau, cfg.irf, res.gamma, res.gamma_d,
                                              res.amplitude, res.baseline);
  const std::string path = out_path(opt, "fit_pulsed.csv");
  write_trace(path, hash, {"delay_ns", "counts", "fit"}, {&hist.tau, &hist.counts, &curve});
  if (!opt.quiet) {
    out << "gamma fixed at " << res.gamma << " /ns\n";
    out << "gamma_d = " << res.gamma_d << " +- " << res.gamma_d_err << " /ns (dephasing time "
        << 1.0 / res.gamma_d << " ns)\n";
    out << "baseline = " << res.baseline << " +- " << res.baseline_err << "\n";
    out << "iterations = " << res.iterations << ", residual = " << res.residual_norm << "\n";
    out << "wrote " << path << "\n";
  }
  if (!res.converged) {
    std::cerr << "error: fit did not converge\n";
    return 2;
  }
  return 0;
}

int cmd_fidelity(const ExperimentConfig& cfg, std::uint64_t hash, const RunOptions& opt,
                 std::ostream& out) {
  const FidelityReport rep = fidelity_report(cfg.g2_zero, cfg.g2_single_zero);
  Grid g(1), p(1), f(1);
  g[0] = rep.g2_zero;
  p[0] = rep.p_n;
  f[0] = rep.fidelity_lower_bound;
  const std::string path = out_path(opt, "fidelity.csv");
  write_trace(path, hash, {"g2_zero", "p_n", "fidelity_lower_bound"}, {&g, &p, &f});
  if (!opt.quiet) {
    out << "noise-to-signal p = " << rep.p_n << "\n";
    out << "fidelity lower bound = " << rep.fidelity_lower_bound << "\n";
    out << "wrote " << path << "\n";
  }
  return 0;
}

}  // namespace

int run_command(const std::string& command, const ExperimentConfig& cfg_in, const RunOptions& opt,
                std::ostream& out) {
  try {
    ExperimentConfig cfg = cfg_in;
    if (opt.seed) cfg.seed = *opt.seed;
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir.empty() ? "." : opt.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + opt.out_dir + "'");
    const std::uint64_t hash = config_hash(cfg);

    if (command == "g2-cw") return cmd_g2_cw(cfg, hash, opt, out);
    if (command == "g2-pulsed") return cmd_g2_pulsed(cfg, hash, opt, out);
    if (command == "intensity") return cmd_intensity(cfg, hash, opt, out);
    if (command == "hom-cw") return cmd_hom_cw(cfg, hash, opt, out);
    if (command == "hom-pulsed") return cmd_hom_pulsed(cfg, hash, opt, out);
    if (command == "sweep") return cmd_sweep(cfg, hash, opt, out);
    if (command == "fit-cw") return cmd_fit_cw(cfg, hash, opt, out);
    if (command == "fit-pulsed") return cmd_fit_pulsed(cfg, hash, opt, out);
    if (command == "fidelity") return cmd_fidelity(cfg, hash, opt, out);
    throw ConfigError("unknown command '" + command + "'");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace coopsim
