#include "coopsim/tracefile.hpp"

#include "coopsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace coopsim {

namespace {

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
  throw ConfigError(path + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

void write_trace(const std::string& path, std::uint64_t config_hash,
                 const std::vector<std::string>& columns, const std::vector<const Grid*>& data) {
  if (columns.empty() || columns.size() != data.size())
    throw std::invalid_argument("write_trace: need one column name per data series");
  const Eigen::Index rows = data[0]->size();
  for (const Grid* g : data)
    if (g->size() != rows) throw std::invalid_argument("write_trace: series lengths differ");

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "# coopsim trace v1\n";
  out << "# config 0x" << format_hash(config_hash) << "\n";
  out << "# generated " << utc_now() << "\n";
  out << "# columns ";
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << "\n";

  char buf[40];
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < data.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", (*data[c])[r]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

Histogram load_histogram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");

  std::vector<double> delays, counts;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    for (char& c : s)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream row(s);
    std::string f1, f2, extra;
    if (!(row >> f1)) continue;
    if (!(row >> f2)) fail(path, line, "expected two columns (delay, counts)");
    if (row >> extra) fail(path, line, "expected two columns (delay, counts)");

    double d = 0.0, c = 0.0;
    try {
      std::size_t p1 = 0, p2 = 0;
      d = std::stod(f1, &p1);
      c = std::stod(f2, &p2);
      if (p1 != f1.size() || p2 != f2.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail(path, line, "cannot parse row '" + raw + "'");
    }
    if (!delays.empty() && !(d > delays.back()))
      fail(path, line, "delay column must increase monotonically");
    if (!(c >= 0.0) || std::abs(c - std::round(c)) > 1e-9)
      fail(path, line, "counts must be nonnegative integers");
    delays.push_back(d);
    counts.push_back(std::round(c));
  }
  if (delays.size() < 2) throw ConfigError(path + ": no data rows");

  Histogram h;
  h.tau = Eigen::Map<const Eigen::ArrayXd>(delays.data(), Eigen::Index(delays.size()));
  h.counts = Eigen::Map<const Eigen::ArrayXd>(counts.data(), Eigen::Index(counts.size()));
  return h;
}

}  // namespace coopsim
