#pragma once

#include "coopsim/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coopsim {

// Comma-separated rows under a '#' header block (schema version, timestamp,
// config hash, column names). Values are written with 17 significant digits so
// a write/read round trip is bit-exact.
void write_trace(const std::string& path, std::uint64_t config_hash,
                 const std::vector<std::string>& columns, const std::vector<const Grid*>& data);

// Counts variant: two columns, monotone delay, nonnegative integer counts.
Histogram load_histogram(const std::string& path);

}  // namespace coopsim
