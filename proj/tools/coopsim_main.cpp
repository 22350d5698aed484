#include "coopsim/config.hpp"
#include "coopsim/runner.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"two-emitter photon correlation simulator"};
  app.require_subcommand(1);

  std::string config_path;
  coopsim::RunOptions opt;
  long long seed = -1;

  const std::pair<const char*, const char*> commands[] = {
      {"g2-cw", "steady-state intensity correlation under CW drive"},
      {"g2-pulsed", "pulsed HBT coincidence histogram with windowed g2(0)"},
      {"intensity", "time-resolved emission intensity and tail decay time"},
      {"hom-cw", "two-photon interference of a CW source in an unbalanced interferometer"},
      {"hom-pulsed", "pulsed two-photon interference histogram and visibility"},
      {"sweep", "rerun g2 over a list of parameter values"},
      {"fit-cw", "fit the CW correlation model to a coincidence histogram"},
      {"fit-pulsed", "fit the pulsed peak model to a coincidence histogram"},
      {"fidelity", "entanglement fidelity bound from measured g2 values"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory (default .)");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--workers", opt.workers, "worker threads for sweep");
    sub->add_flag("--quiet", opt.quiet, "suppress the summary");
  }

  CLI11_PARSE(app, argc, argv);

  if (seed >= 0) opt.seed = std::uint64_t(seed);
  try {
    const coopsim::ExperimentConfig cfg = coopsim::parse_config_file(config_path);
    return coopsim::run_command(app.get_subcommands().front()->get_name(), cfg, opt, std::cout);
  } catch (const coopsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
