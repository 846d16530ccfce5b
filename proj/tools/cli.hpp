#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "twistzero/error.hpp"

namespace twistzero::cli {

enum ExitCode : int { kOk = 0, kNumerical = 1, kHypothesis = 2, kConfig = 3 };

/// Everything a command needs, validated before any computation.
struct RunConfig {
  std::string command;
  std::string form;
  std::string twist;
  std::optional<std::int64_t> level;
  double t0 = 0.0;
  double t1 = 10.0;
  double step = 0.1;
  std::vector<double> T;
  std::optional<double> tol;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<std::size_t> count;
  // fecheck
  double re0 = 5.0;
  double re1 = 7.0;
  int grid = 5;
  std::vector<std::string> points;
  int random_points = 0;
  // eval
  bool no_z = false;
  // hl
  std::vector<std::string> probes{"hl"};
  std::string s = "0.5";
};

int exit_code(ErrorCode code);

/// Parses `a`, `a+bi`, `a-bi`, `bi`.
std::complex<double> parse_complex(const std::string& text);

/// Runs `twistzero <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistzero::cli
