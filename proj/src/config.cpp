#include "coopsim/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace coopsim {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size()) return d;
  } catch (const std::exception&) {
  }
  fail(origin, line, "key '" + key + "' expects a number, got '" + v + "'");
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos == v.size()) return n;
  } catch (const std::exception&) {
  }
  fail(origin, line, "key '" + key + "' expects an integer, got '" + v + "'");
}

std::uint64_t parse_uint(const std::string& origin, int line, const std::string& key,
                         const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long n = std::stoull(v, &pos);
    if (pos == v.size() && v.find('-') == std::string::npos) return n;
  } catch (const std::exception&) {
  }
  fail(origin, line, "key '" + key + "' expects a nonnegative integer, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& origin, int line, const std::string& key,
                               const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(origin, line, "key '" + key + "' has an empty list entry");
    out.push_back(parse_double(origin, line, key, item));
  }
  if (out.empty()) fail(origin, line, "key '" + key + "' expects a comma-separated list");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += fmt(vs[i]);
  }
  return out;
}

const char* model_name(Model m) {
  switch (m) {
    case Model::Single: return "single";
    case Model::Independent: return "independent";
    case Model::Cooperative: return "cooperative";
    case Model::Superradiant: return "superradiant";
  }
  return "?";
}

const char* drive_name(DriveProtocol::Kind k) {
  switch (k) {
    case DriveProtocol::Kind::IncoherentCW: return "incoherent_cw";
    case DriveProtocol::Kind::CoherentCW: return "coherent_cw";
    case DriveProtocol::Kind::CoherentPulsed: return "pulsed";
  }
  return "?";
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail(origin, line, "missing key before '='");
    if (val.empty()) fail(origin, line, "missing value for key '" + key + "'");
    if (!seen.insert(key).second) fail(origin, line, "duplicate key '" + key + "'");

    const auto num = [&] { return parse_double(origin, line, key, val); };
    if (key == "model") {
      if (val == "single") cfg.model = Model::Single;
      else if (val == "independent") cfg.model = Model::Independent;
      else if (val == "cooperative") cfg.model = Model::Cooperative;
      else if (val == "superradiant") cfg.model = Model::Superradiant;
      else fail(origin, line, "unknown model '" + val + "'");
    } else if (key == "gamma_per_ns") cfg.params.gamma = num();
    else if (key == "gamma_p_per_ns") cfg.params.gamma_p = num();
    else if (key == "gamma_d_per_ns") cfg.params.gamma_d = num();
    else if (key == "gamma_sr_per_ns") cfg.params.gamma_sr = num();
    else if (key == "drive") {
      if (val == "incoherent_cw") cfg.drive.kind = DriveProtocol::Kind::IncoherentCW;
      else if (val == "coherent_cw") cfg.drive.kind = DriveProtocol::Kind::CoherentCW;
      else if (val == "pulsed") cfg.drive.kind = DriveProtocol::Kind::CoherentPulsed;
      else fail(origin, line, "unknown drive '" + val + "'");
    } else if (key == "rabi_per_ns") cfg.drive.rabi = num();
    else if (key == "detuning1_per_ns") cfg.drive.detuning[0] = num();
    else if (key == "detuning2_per_ns") cfg.drive.detuning[1] = num();
    else if (key == "pulse_area_rad") cfg.drive.pulse_area = num();
    else if (key == "pulse_fwhm_ns") cfg.drive.pulse_fwhm = num();
    else if (key == "period_ns") cfg.drive.period = num();
    else if (key == "hom_delay_ns") cfg.hom.delay = num();
    else if (key == "polarization_overlap") cfg.hom.polarization_overlap = num();
    else if (key == "irf_fwhm_ns") cfg.irf.fwhm = num();
    else if (key == "tau_max_ns") cfg.tau_max = num();
    else if (key == "tau_points") cfg.tau_points = int(parse_int(origin, line, key, val));
    else if (key == "tau_span_ns") cfg.tau_span = num();
    else if (key == "t_max_ns") cfg.t_max = num();
    else if (key == "t_points") cfg.t_points = int(parse_int(origin, line, key, val));
    else if (key == "tail_start_ns") cfg.tail_start = num();
    else if (key == "windows_ns") cfg.windows = parse_list(origin, line, key, val);
    else if (key == "initial_state") {
      if (val != "ground" && val != "ee") fail(origin, line, "initial_state must be ground or ee");
      cfg.initial_state = val;
    } else if (key == "counts") cfg.counts = parse_int(origin, line, key, val);
    else if (key == "seed") cfg.seed = parse_uint(origin, line, key, val);
    else if (key == "input_path") cfg.input_path = val;
    else if (key == "fit_gamma_per_ns") cfg.fit_init.gamma = num();
    else if (key == "fit_gamma_d_per_ns") cfg.fit_init.gamma_d = num();
    else if (key == "fit_amplitude") cfg.fit_init.amplitude = num();
    else if (key == "fit_baseline") cfg.fit_init.baseline = num();
    else if (key == "fixed_gamma_per_ns") cfg.fixed_gamma = num();
    else if (key == "g2_zero") cfg.g2_zero = num();
    else if (key == "g2_single_zero") cfg.g2_single_zero = num();
    else if (key == "sweep_parameter") cfg.sweep_parameter = val;
    else if (key == "sweep_values") cfg.sweep_values = parse_list(origin, line, key, val);
    else fail(origin, line, "unknown key '" + key + "'");
  }

  try {
    cfg.params.validate();
    cfg.drive.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::map<std::string, std::string> ExperimentConfig::canonical() const {
  std::map<std::string, std::string> m;
  m["model"] = model_name(model);
  m["gamma_per_ns"] = fmt(params.gamma);
  m["gamma_p_per_ns"] = fmt(params.gamma_p);
  m["gamma_d_per_ns"] = fmt(params.gamma_d);
  m["gamma_sr_per_ns"] = fmt(params.collective_rate());
  m["drive"] = drive_name(drive.kind);
  m["rabi_per_ns"] = fmt(drive.rabi);
  m["detuning1_per_ns"] = fmt(drive.detuning[0]);
  m["detuning2_per_ns"] = fmt(drive.detuning[1]);
  m["pulse_area_rad"] = fmt(drive.pulse_area);
  m["pulse_fwhm_ns"] = fmt(drive.pulse_fwhm);
  m["period_ns"] = fmt(drive.period);
  m["hom_delay_ns"] = fmt(hom.delay);
  m["polarization_overlap"] = fmt(hom.polarization_overlap);
  m["irf_fwhm_ns"] = fmt(irf.fwhm);
  m["tau_max_ns"] = fmt(tau_max);
  m["tau_points"] = std::to_string(tau_points);
  m["tau_span_ns"] = fmt(tau_span);
  m["t_max_ns"] = fmt(t_max);
  m["t_points"] = std::to_string(t_points);
  m["tail_start_ns"] = fmt(tail_start);
  m["windows_ns"] = fmt_list(windows);
  m["initial_state"] = initial_state;
  m["counts"] = std::to_string(counts);
  m["seed"] = std::to_string(seed);
  m["input_path"] = input_path;
  m["fit_gamma_per_ns"] = fmt(fit_init.gamma);
  m["fit_gamma_d_per_ns"] = fmt(fit_init.gamma_d);
  m["fit_amplitude"] = fmt(fit_init.amplitude);
  m["fit_baseline"] = fmt(fit_init.baseline);
  m["fixed_gamma_per_ns"] = fmt(fixed_gamma);
  m["g2_zero"] = fmt(g2_zero);
  m["g2_single_zero"] = fmt(g2_single_zero);
  m["sweep_parameter"] = sweep_parameter;
  m["sweep_values"] = sweep_values.empty() ? "" : fmt_list(sweep_values);
  return m;
}

void set_numeric_key(ExperimentConfig& cfg, const std::string& key, double value) {
  if (key == "gamma_per_ns") cfg.params.gamma = value;
  else if (key == "gamma_p_per_ns") cfg.params.gamma_p = value;
  else if (key == "gamma_d_per_ns") cfg.params.gamma_d = value;
  else if (key == "gamma_sr_per_ns") cfg.params.gamma_sr = value;
  else if (key == "rabi_per_ns") cfg.drive.rabi = value;
  else if (key == "detuning1_per_ns") cfg.drive.detuning[0] = value;
  else if (key == "detuning2_per_ns") cfg.drive.detuning[1] = value;
  else if (key == "pulse_area_rad") cfg.drive.pulse_area = value;
  else if (key == "pulse_fwhm_ns") cfg.drive.pulse_fwhm = value;
  else if (key == "period_ns") cfg.drive.period = value;
  else if (key == "hom_delay_ns") cfg.hom.delay = value;
  else if (key == "polarization_overlap") cfg.hom.polarization_overlap = value;
  else if (key == "irf_fwhm_ns") cfg.irf.fwhm = value;
  else if (key == "tau_max_ns") cfg.tau_max = value;
  else if (key == "tau_span_ns") cfg.tau_span = value;
  else if (key == "t_max_ns") cfg.t_max = value;
  else if (key == "tail_start_ns") cfg.tail_start = value;
  else if (key == "fixed_gamma_per_ns") cfg.fixed_gamma = value;
  else if (key == "g2_zero") cfg.g2_zero = value;
  else if (key == "g2_single_zero") cfg.g2_single_zero = value;
  else if (key == "fit_gamma_per_ns") cfg.fit_init.gamma = value;
  else if (key == "fit_gamma_d_per_ns") cfg.fit_init.gamma_d = value;
  else if (key == "fit_amplitude") cfg.fit_init.amplitude = value;
  else if (key == "fit_baseline") cfg.fit_init.baseline = value;
  else throw ConfigError("unknown sweep parameter '" + key + "'");
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  const auto mix = [&h](const std::string& s) {
    for (const char c : s) {
      h ^= std::uint64_t(static_cast<unsigned char>(c));
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [key, value] : cfg.canonical()) {
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  return h;
}

std::string format_hash(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coopsim
