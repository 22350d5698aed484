#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>

namespace coopsim {

// All rates are 1/ns, all times ns, hbar = 1.

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Grid = Eigen::ArrayXd;

struct EmitterParams {
  double gamma = 1.0 / 0.643;  // spontaneous emission
  double gamma_p = 0.0;        // incoherent pump
  double gamma_d = 0.0;        // pure dephasing
  std::optional<double> gamma_sr;  // collective decay; defaults to 2*gamma

  double collective_rate() const { return gamma_sr ? *gamma_sr : 2.0 * gamma; }
  void validate() const;
};

enum class Model { Single, Independent, Cooperative, Superradiant };

inline int hilbert_dim(Model m) { return m == Model::Single ? 2 : 4; }

struct DriveProtocol {
  enum class Kind { IncoherentCW, CoherentCW, CoherentPulsed };

  Kind kind = Kind::IncoherentCW;
  double rabi = 0.0;                          // rad/ns, CoherentCW
  std::array<double, 2> detuning{0.0, 0.0};   // rad/ns, per emitter
  double pulse_area = 0.0;                    // rad, CoherentPulsed
  double pulse_fwhm = 0.040;                  // ns
  double period = 12.44;                      // ns

  void validate() const;

  static DriveProtocol incoherent_cw();
  static DriveProtocol coherent_cw(double rabi, double det1 = 0.0, double det2 = 0.0);
  static DriveProtocol pulsed(double area, double fwhm = 0.040, double period = 12.44);
};

enum class Normalization { Raw, SteadyStateSquared, SidePeak };

struct CorrelationTrace {
  Grid tau;     // ns, uniform
  Grid values;  // real: g2, intensity, visibility
  Normalization normalization = Normalization::Raw;
};

struct CoherenceTrace {
  Grid tau;
  Eigen::ArrayXcd values;  // complex g1
  Normalization normalization = Normalization::Raw;
};

struct PulsedHistogram {
  Grid tau;     // ns, uniform, symmetric about zero
  Grid values;  // coincidence density, normalized to unit side-peak area
  double period = 12.44;
  int n_side_peaks = 0;
};

struct Histogram {
  Grid tau;
  Grid counts;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double grid_spacing(const Grid& g, const char* what);  // checks uniformity
double trapezoid(const Grid& x, const Grid& y);

}  // namespace coopsim
