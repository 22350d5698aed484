#include "doctest.h"

#include "coopsim/config.hpp"
#include "coopsim/tracefile.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace coopsim;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "coopsim_tracefile_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string temp_file(const char* name) { return (temp_dir() / name).string(); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string contains_msg(const ConfigError& e, const std::string& needle) {
  std::string what = e.what();
  return what.find(needle) != std::string::npos ? "" : what;
}

}  // namespace

TEST_CASE("write_trace emits the documented header and %.17g rows") {
  const std::string path = temp_file("header.csv");
  Grid tau(3), counts(3);
  tau << -1.5, 0.0, 1.5;
  counts << 10.0, 0.0, 7.0;
  write_trace(path, 0x00ff00ff12345678ull, {"delay_ns", "counts"}, {&tau, &counts});

  const std::vector<std::string> lines = read_lines(path);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "# coopsim trace v1");
  CHECK(lines[1] == "# config 0x00ff00ff12345678");
  CHECK(lines[2].rfind("# generated ", 0) == 0);
  CHECK(lines[2].size() == std::string("# generated 2026-01-01T00:00:00Z").size());
  CHECK(lines[2].back() == 'Z');
  CHECK(lines[3] == "# columns delay_ns,counts");

  char expect[96];
  std::snprintf(expect, sizeof expect, "%.17g,%.17g", -1.5, 10.0);
  CHECK(lines[4] == expect);
  std::snprintf(expect, sizeof expect, "%.17g,%.17g", 0.0, 0.0);
  CHECK(lines[5] == expect);
}

TEST_CASE("doubles survive a write/load round trip bit for bit") {
  const std::string path = temp_file("roundtrip.csv");
  Grid tau(5), counts(5);
  tau << -4.0 * std::atan(1.0), 0.1 + 0.2, 1.0 / 3.0, std::sqrt(2.0), 12.440000000000001;
  counts << 0.0, 3.0, 141.0, 1e9, 7.0;
  write_trace(path, 42, {"delay_ns", "counts"}, {&tau, &counts});

  const Histogram h = load_histogram(path);
  REQUIRE(h.tau.size() == 5);
  for (Eigen::Index i = 0; i < 5; ++i) {
    CHECK(h.tau[i] == tau[i]);
    CHECK(h.counts[i] == counts[i]);
  }
}

TEST_CASE("write_trace validates its inputs") {
  Grid a(2), b(3);
  a << 0.0, 1.0;
  b << 0.0, 1.0, 2.0;
  CHECK_THROWS_AS(write_trace(temp_file("bad.csv"), 0, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(write_trace(temp_file("bad.csv"), 0, {"x"}, {&a, &b}), std::invalid_argument);
  CHECK_THROWS_AS(write_trace(temp_file("bad.csv"), 0, {"x", "y"}, {&a, &b}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      write_trace("/nonexistent_dir_zz9/t.csv", 0, {"x"}, {&a}), ConfigError);
}

TEST_CASE("load_histogram tolerates comments, blanks, and mixed separators") {
  const std::string path = temp_file("tolerant.csv");
  write_text(path,
             "# coopsim trace v1\n"
             "# columns delay_ns,counts\n"
             "\n"
             "-0.5, 4   # inline note\n"
             "0\t9\n"
             "   \n"
             "0.5 16\n");
  const Histogram h = load_histogram(path);
  REQUIRE(h.tau.size() == 3);
  CHECK(h.tau[0] == -0.5);
  CHECK(h.tau[2] == 0.5);
  CHECK(h.counts[0] == 4.0);
  CHECK(h.counts[1] == 9.0);
  CHECK(h.counts[2] == 16.0);
}

TEST_CASE("load_histogram reports the offending line") {
  const std::string wide = temp_file("wide.csv");
  write_text(wide, "0 1\n1 2 3\n");
  try {
    load_histogram(wide);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_msg(e, wide + ":2") == "");
    CHECK(contains_msg(e, "expected two columns") == "");
  }

  const std::string narrow = temp_file("narrow.csv");
  write_text(narrow, "0 1\n7\n");
  try {
    load_histogram(narrow);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_msg(e, narrow + ":2") == "");
    CHECK(contains_msg(e, "expected two columns") == "");
  }

  const std::string garbled = temp_file("garbled.csv");
  write_text(garbled, "0 1\n0.5 abc\n");
  try {
    load_histogram(garbled);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_msg(e, garbled + ":2") == "");
    CHECK(contains_msg(e, "cannot parse row '0.5 abc'") == "");
  }
}

TEST_CASE("load_histogram rejects non-monotone delays and bad counts") {
  const std::string repeat = temp_file("repeat.csv");
  write_text(repeat, "0 1\n0 2\n");
  try {
    load_histogram(repeat);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_msg(e, repeat + ":2") == "");
    CHECK(contains_msg(e, "monotonically") == "");
  }

  const std::string backward = temp_file("backward.csv");
  write_text(backward, "0 1\n1 2\n0.5 3\n");
  try {
    load_histogram(backward);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_msg(e, backward + ":3") == "");
  }

  const std::string negative = temp_file("negative_counts.csv");
  write_text(negative, "0 1\n1 -2\n");
  try {
    load_histogram(negative);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_msg(e, "nonnegative integers") == "");
  }

  const std::string fractional = temp_file("fractional_counts.csv");
  write_text(fractional, "0 1\n1 2.5\n");
  CHECK_THROWS_AS(load_histogram(fractional), ConfigError);
}

TEST_CASE("load_histogram needs at least two data rows") {
  const std::string one = temp_file("one_row.csv");
  write_text(one, "# columns delay,counts\n0 5\n");
  try {
    load_histogram(one);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(contains_msg(e, "no data rows") == "");
  }

  const std::string empty = temp_file("empty.csv");
  write_text(empty, "");
  CHECK_THROWS_AS(load_histogram(empty), ConfigError);

  CHECK_THROWS_AS(load_histogram(temp_file("does_not_exist.csv")), ConfigError);
}

TEST_CASE("counts written as integers read back exactly after rounding") {
  const std::string path = temp_file("rounding.csv");
  write_text(path, "0 4.0000000001\n1 5\n");
  const Histogram h = load_histogram(path);
  CHECK(h.counts[0] == 4.0);
  CHECK(h.counts[1] == 5.0);
}
