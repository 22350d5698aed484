#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coopsim/config.hpp"
#include "coopsim/correlators.hpp"
#include "coopsim/emission.hpp"
#include "coopsim/pulsed_engine.hpp"

namespace py = pybind11;
using namespace coopsim;

PYBIND11_MODULE(_coopsim, m) {
  m.doc() = "two-emitter photon correlation simulator";

  py::enum_<Model>(m, "Model")
      .value("Single", Model::Single)
      .value("Independent", Model::Independent)
      .value("Cooperative", Model::Cooperative)
      .value("Superradiant", Model::Superradiant);

  py::enum_<Normalization>(m, "Normalization")
      .value("Raw", Normalization::Raw)
      .value("SteadyStateSquared", Normalization::SteadyStateSquared)
      .value("SidePeak", Normalization::SidePeak);

  py::enum_<EdgeMode>(m, "EdgeMode")
      .value("Reflect", EdgeMode::Reflect)
      .value("Zero", EdgeMode::Zero);

  py::class_<EmitterParams>(m, "EmitterParams")
      .def(py::init<>())
      .def_readwrite("gamma", &EmitterParams::gamma)
      .def_readwrite("gamma_p", &EmitterParams::gamma_p)
      .def_readwrite("gamma_d", &EmitterParams::gamma_d)
      .def_readwrite("gamma_sr", &EmitterParams::gamma_sr)
      .def("collective_rate", &EmitterParams::collective_rate)
      .def("validate", &EmitterParams::validate);

  py::class_<DriveProtocol> drive(m, "DriveProtocol");
  py::enum_<DriveProtocol::Kind>(drive, "Kind")
      .value("IncoherentCW", DriveProtocol::Kind::IncoherentCW)
      .value("CoherentCW", DriveProtocol::Kind::CoherentCW)
      .value("CoherentPulsed", DriveProtocol::Kind::CoherentPulsed);
  drive.def(py::init<>())
      .def_readwrite("kind", &DriveProtocol::kind)
      .def_readwrite("rabi", &DriveProtocol::rabi)
      .def_readwrite("detuning", &DriveProtocol::detuning)
      .def_readwrite("pulse_area", &DriveProtocol::pulse_area)
      .def_readwrite("pulse_fwhm", &DriveProtocol::pulse_fwhm)
      .def_readwrite("period", &DriveProtocol::period)
      .def_static("incoherent_cw", &DriveProtocol::incoherent_cw)
      .def_static("coherent_cw", &DriveProtocol::coherent_cw, py::arg("rabi"),
                  py::arg("det1") = 0.0, py::arg("det2") = 0.0)
      .def_static("pulsed", &DriveProtocol::pulsed, py::arg("area"), py::arg("fwhm") = 0.040,
                  py::arg("period") = 12.44);

  py::class_<HomConfig>(m, "HomConfig")
      .def(py::init<>())
      .def_readwrite("delay", &HomConfig::delay)
      .def_readwrite("polarization_overlap", &HomConfig::polarization_overlap);

  py::class_<IrfModel>(m, "IrfModel")
      .def(py::init<>())
      .def_readwrite("fwhm", &IrfModel::fwhm);

  py::class_<FitInit>(m, "FitInit")
      .def(py::init<>())
      .def_readwrite("gamma", &FitInit::gamma)
      .def_readwrite("gamma_d", &FitInit::gamma_d)
      .def_readwrite("amplitude", &FitInit::amplitude)
      .def_readwrite("baseline", &FitInit::baseline);

  py::class_<CorrelationTrace>(m, "CorrelationTrace")
      .def(py::init<>())
      .def_readwrite("tau", &CorrelationTrace::tau)
      .def_readwrite("values", &CorrelationTrace::values)
      .def_readwrite("normalization", &CorrelationTrace::normalization);

  py::class_<CoherenceTrace>(m, "CoherenceTrace")
      .def(py::init<>())
      .def_readwrite("tau", &CoherenceTrace::tau)
      .def_readwrite("values", &CoherenceTrace::values);

  py::class_<PulsedHistogram>(m, "PulsedHistogram")
      .def(py::init<>())
      .def_readwrite("tau", &PulsedHistogram::tau)
      .def_readwrite("values", &PulsedHistogram::values)
      .def_readwrite("period", &PulsedHistogram::period)
      .def_readwrite("n_side_peaks", &PulsedHistogram::n_side_peaks);

  py::class_<Histogram>(m, "Histogram")
      .def(py::init<>())
      .def_readwrite("tau", &Histogram::tau)
      .def_readwrite("counts", &Histogram::counts);

  py::class_<PulsedSolution>(m, "PulsedSolution")
      .def_readonly("t", &PulsedSolution::t)
      .def_readonly("intensity", &PulsedSolution::intensity)
      .def_readonly("tau", &PulsedSolution::tau)
      .def_readonly("central", &PulsedSolution::central)
      .def_readonly("side", &PulsedSolution::side)
      .def_readonly("coherence_sq", &PulsedSolution::coherence_sq)
      .def_readonly("intensity_area", &PulsedSolution::intensity_area)
      .def_readonly("rate_scale", &PulsedSolution::rate_scale);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("gamma", &FitResult::gamma)
      .def_readonly("gamma_err", &FitResult::gamma_err)
      .def_readonly("gamma_d", &FitResult::gamma_d)
      .def_readonly("gamma_d_err", &FitResult::gamma_d_err)
      .def_readonly("amplitude", &FitResult::amplitude)
      .def_readonly("amplitude_err", &FitResult::amplitude_err)
      .def_readonly("baseline", &FitResult::baseline)
      .def_readonly("baseline_err", &FitResult::baseline_err)
      .def_readonly("residual_norm", &FitResult::residual_norm)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("objective_history", &FitResult::objective_history);

  py::class_<FidelityReport>(m, "FidelityReport")
      .def_readonly("g2_zero", &FidelityReport::g2_zero)
      .def_readonly("p_n", &FidelityReport::p_n)
      .def_readonly("fidelity_lower_bound", &FidelityReport::fidelity_lower_bound);

  m.def("g2_cw", &g2_cw, py::arg("model"), py::arg("params"), py::arg("drive"),
        py::arg("tau_grid"));
  m.def("g1_cw", &g1_cw, py::arg("model"), py::arg("params"), py::arg("drive"),
        py::arg("tau_grid"));
  m.def("two_time_g2", &two_time_g2, py::arg("model"), py::arg("params"), py::arg("drive"),
        py::arg("rho0"), py::arg("t1"), py::arg("tau_grid"));
  m.def("g2_pulsed", &g2_pulsed, py::arg("model"), py::arg("params"), py::arg("pulse"),
        py::arg("tau_span"));
  m.def("integrate_peak", &integrate_peak, py::arg("histogram"), py::arg("center"),
        py::arg("window"));
  m.def("solve_pulsed", &solve_pulsed, py::arg("model"), py::arg("params"), py::arg("pulse"),
        py::arg("tau_max"), py::arg("dtau"), py::arg("with_g1"));
  m.def("assemble_cluster", &assemble_cluster, py::arg("solution"), py::arg("central"),
        py::arg("side"), py::arg("period"), py::arg("tau_span"));
  m.def("time_resolved_intensity",
        py::overload_cast<Model, const EmitterParams&, const DriveProtocol&, const Grid&>(
            &time_resolved_intensity),
        py::arg("model"), py::arg("params"), py::arg("pulse"), py::arg("t_grid"));
  m.def("time_resolved_intensity",
        py::overload_cast<Model, const EmitterParams&, const Matrix&, const Grid&>(
            &time_resolved_intensity),
        py::arg("model"), py::arg("params"), py::arg("rho0"), py::arg("t_grid"));

  m.def("hom_cross_correlation", &hom_cross_correlation, py::arg("g2"), py::arg("g1"),
        py::arg("config"));
  m.def("visibility", &visibility, py::arg("parallel"), py::arg("perpendicular"));
  m.def("coherence_time_window", &coherence_time_window, py::arg("visibility"));
  m.def("hom_pulsed", &hom_pulsed, py::arg("model"), py::arg("params"), py::arg("pulse"),
        py::arg("config"));

  m.def("convolve",
        py::overload_cast<const CorrelationTrace&, const IrfModel&, EdgeMode>(&convolve),
        py::arg("trace"), py::arg("irf"), py::arg("mode") = EdgeMode::Reflect);
  m.def("convolve", py::overload_cast<const PulsedHistogram&, const IrfModel&>(&convolve),
        py::arg("histogram"), py::arg("irf"));
  m.def("sample_histogram", &sample_histogram, py::arg("trace"), py::arg("total_counts"),
        py::arg("seed"));

  m.def("fit_g2_cw", &fit_g2_cw, py::arg("histogram"), py::arg("irf"),
        py::arg("init") = FitInit{});
  m.def("fit_g2_pulsed_peak", &fit_g2_pulsed_peak, py::arg("histogram"), py::arg("irf"),
        py::arg("gamma_fixed"), py::arg("init") = FitInit{});
  m.def("fit_model_g2_cw", &fit_model_g2_cw, py::arg("tau"), py::arg("irf"), py::arg("gamma"),
        py::arg("gamma_d"), py::arg("amplitude"));
  m.def("fit_model_g2_pulsed_peak", &fit_model_g2_pulsed_peak, py::arg("tau"), py::arg("irf"),
        py::arg("gamma"), py::arg("gamma_d"), py::arg("amplitude"), py::arg("baseline"));

  m.def("noise_ratio_from_g2", &noise_ratio_from_g2, py::arg("g2_single_zero"));
  m.def("entanglement_fidelity", &entanglement_fidelity, py::arg("g2_zero"), py::arg("p_n"));
  m.def("fidelity_report", &fidelity_report, py::arg("g2_zero"), py::arg("g2_single_zero"));
  m.def("exponential_tail_fit", &exponential_tail_fit, py::arg("intensity"), py::arg("t_min"));

  m.def("analytic_g2_cw", &analytic_g2_cw, py::arg("gamma"), py::arg("gamma_d"), py::arg("tau"));
  m.def("analytic_g2_pulsed_peak", &analytic_g2_pulsed_peak, py::arg("gamma"),
        py::arg("gamma_d"), py::arg("tau"));

  m.def(
      "steady_state",
      [](Model model, const EmitterParams& p, const DriveProtocol& drive) {
        return steady_state(build_generator(model, p, drive, 1));
      },
      py::arg("model"), py::arg("params"), py::arg("drive"));
  m.def("g2_zero_independent", &g2_zero_independent, py::arg("n1"), py::arg("n2"));
  m.def("g2_zero_cooperative", &g2_zero_cooperative, py::arg("rho"));
  m.def("population1", &population1);
  m.def("population2", &population2);
  m.def("symmetric_population", &symmetric_population);
  m.def("antisymmetric_population", &antisymmetric_population);
  m.def("doubly_excited_population", &doubly_excited_population);
  m.def("directional_average", &directional_average, py::arg("n_samples"), py::arg("seed"));

  m.def("default_tau_grid", &default_tau_grid, py::arg("params"), py::arg("points") = 2001);
  m.def("uniform_grid", &uniform_grid, py::arg("lo"), py::arg("hi"), py::arg("points"));
  m.def("mirror_grid", &mirror_grid, py::arg("half"));
  m.def("mirror_values", &mirror_values, py::arg("half"));

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<NumericalError>(m, "NumericalError");
}
