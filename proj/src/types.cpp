#include "coopsim/types.hpp"

#include <cmath>
#include <string>

namespace coopsim {

namespace {

void check_rate(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0)
    throw ConfigError(std::string(name) + " must be a finite nonnegative rate");
}

}  // namespace

void EmitterParams::validate() const {
  check_rate(gamma, "gamma");
  check_rate(gamma_p, "gamma_p");
  check_rate(gamma_d, "gamma_d");
  if (gamma_sr) check_rate(*gamma_sr, "gamma_sr");
}

void DriveProtocol::validate() const {
  if (!std::isfinite(rabi)) throw ConfigError("rabi must be finite");
  if (!std::isfinite(detuning[0]) || !std::isfinite(detuning[1]))
    throw ConfigError("detuning must be finite");
  if (kind == Kind::CoherentPulsed) {
    if (!(pulse_fwhm > 0.0)) throw ConfigError("pulse_fwhm must be positive");
    if (!(period > pulse_fwhm)) throw ConfigError("period must exceed pulse_fwhm");
    if (!std::isfinite(pulse_area) || pulse_area < 0.0)
      throw ConfigError("pulse_area must be a finite nonnegative angle");
  }
}

DriveProtocol DriveProtocol::incoherent_cw() { return DriveProtocol{}; }

DriveProtocol DriveProtocol::coherent_cw(double rabi, double det1, double det2) {
  DriveProtocol d;
  d.kind = Kind::CoherentCW;
  d.rabi = rabi;
  d.detuning = {det1, det2};
  return d;
}

DriveProtocol DriveProtocol::pulsed(double area, double fwhm, double period) {
  DriveProtocol d;
  d.kind = Kind::CoherentPulsed;
  d.pulse_area = area;
  d.pulse_fwhm = fwhm;
  d.period = period;
  return d;
}

double grid_spacing(const Grid& g, const char* what) {
  if (g.size() < 2)
    throw std::invalid_argument(std::string(what) + ": grid needs at least two points");
  const double h = g[1] - g[0];
  if (!(h > 0.0))
    throw std::invalid_argument(std::string(what) + ": grid must be strictly increasing");
  for (Eigen::Index i = 1; i < g.size(); ++i) {
    if (std::abs((g[i] - g[i - 1]) - h) > 1e-9 * std::max(1.0, h))
      throw std::invalid_argument(std::string(what) + ": grid must be uniformly spaced");
  }
  return h;
}

double trapezoid(const Grid& x, const Grid& y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: grid and values differ in size");
  double area = 0.0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    area += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return area;
}

}  // namespace coopsim
