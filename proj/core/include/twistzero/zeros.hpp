#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "twistzero/lfun.hpp"

namespace twistzero {

/// One sample of a real-valued Z function.
struct ZSample {
  double value = 0.0;  // Re Z
  double imag = 0.0;   // Im Z, should vanish
  double err = 0.0;    // absolute error estimate
  double abs_L = 0.0;  // |L(1/2 + it)| when known
};

using ZFunction = std::function<ZSample(double)>;

/// Wraps z_f / z_g of a TwistedL at the given evaluation tolerance.
ZFunction critical_z(const TwistedL& L, double tol = 1e-12);

struct Bracket {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double z_lo = 0.0;
  double z_hi = 0.0;
};

struct RefinedZero {
  double t = 0.0;
  double abs_L = 0.0;
  double width = 0.0;
  int iterations = 0;
};

struct ScanOptions {
  /// |Im Z| above realness_tol |Z| + 10 err aborts the scan.
  double realness_tol = 1e-6;
};

struct ScanResult {
  std::vector<Bracket> brackets;
  /// Ordinates whose |Z| was below the noise floor and so not used.
  std::vector<double> skipped;
};

/// Samples Z on t0, t0 + step, ... <= t1 and brackets every strict sign
/// change between consecutive usable samples.
ScanResult scan(const ZFunction& z, double t0, double t1, double step, const ScanOptions& opts = {});

/// Bisection until the bracket is no wider than tol. Throws LostBracket when
/// a midpoint's sign cannot be resolved above its error estimate.
RefinedZero refine(const ZFunction& z, const Bracket& bracket, double tol);

struct ZeroReport {
  std::string label;
  ReducedRational twist;
  double t0 = 0.0;
  double t1 = 0.0;
  double step = 0.0;
  std::vector<Bracket> brackets;
  std::vector<RefinedZero> zeros;
  std::vector<double> skipped;
  std::vector<std::string> warnings;
};

/// scan + refine (brackets refined in parallel); LostBracket becomes a warning.
ZeroReport find_zeros(const ZFunction& z, double t0, double t1, double step, double tol,
                      const ScanOptions& opts = {});

struct ZeroCount {
  std::size_t count = 0;
  /// floor(t) -> zeros in [floor(t), floor(t) + 1)
  std::map<long long, std::size_t> density;
};

ZeroCount count_zeros(const ZeroReport& report);

}  // namespace twistzero
