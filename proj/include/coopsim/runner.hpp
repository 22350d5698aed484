#pragma once

#include "coopsim/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace coopsim {

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int workers = 1;
  bool quiet = false;
};

// Exit codes: 0 success, 1 configuration error, 2 numerical failure.
int run_command(const std::string& command, const ExperimentConfig& cfg, const RunOptions& opt,
                std::ostream& out);

}  // namespace coopsim
