#pragma once

#include "coopsim/analysis.hpp"
#include "coopsim/hom.hpp"
#include "coopsim/instrument.hpp"
#include "coopsim/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coopsim {

struct ExperimentConfig {
  Model model = Model::Cooperative;
  EmitterParams params;
  DriveProtocol drive;
  HomConfig hom;
  IrfModel irf;

  double tau_max = 0.0;   // 0 = auto: 5 x slowest coherence time
  int tau_points = 2001;
  double tau_span = 0.0;  // 0 = auto: 3 x period
  double t_max = 10.0;
  int t_points = 2001;
  double tail_start = 1.5;
  std::vector<double> windows{10.0, 0.3};
  std::string initial_state = "ground";  // or "ee"

  long long counts = 1000000;
  std::uint64_t seed = 1;

  std::string input_path;
  FitInit fit_init;
  double fixed_gamma = 0.0;  // 0 = use params.gamma

  double g2_zero = 0.87;
  double g2_single_zero = 0.06;

  std::string sweep_parameter;
  std::vector<double> sweep_values;

  // Every key with its effective value, sorted; the hash input.
  std::map<std::string, std::string> canonical() const;
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

void set_numeric_key(ExperimentConfig& cfg, const std::string& key, double value);

std::uint64_t config_hash(const ExperimentConfig& cfg);
std::string format_hash(std::uint64_t h);

}  // namespace coopsim
