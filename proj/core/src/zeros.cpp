#include "twistzero/zeros.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "twistzero/error.hpp"
#include "twistzero/parallel.hpp"

namespace twistzero {
namespace {

double noise_floor(const ZSample& s) { return 10.0 * s.err; }

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

ZFunction critical_z(const TwistedL& L, double tol) {
  return [&L, tol](double t) {
    const CriticalValue v = L.z(t, tol);
    return ZSample{v.Z.real(), v.Z.imag(), v.err_est, std::abs(v.L)};
  };
}

ScanResult scan(const ZFunction& z, double t0, double t1, double step, const ScanOptions& opts) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "scan step must be positive");
  ScanResult out;
  if (t1 < t0) return out;
  const auto count = static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9)) + 1;
  std::vector<double> ts(count);
  std::vector<ZSample> samples(count);
  for (std::size_t i = 0; i < count; ++i) ts[i] = t0 + static_cast<double>(i) * step;
  parallel_for(count, [&](std::size_t i) { samples[i] = z(ts[i]); });

  bool have_prev = false;
  std::size_t prev = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const ZSample& s = samples[i];
    if (std::abs(s.imag) > opts.realness_tol * std::abs(s.value) + 10.0 * s.err) {
      throw Error(ErrorCode::RealnessViolation,
                  "Im Z = " + num(s.imag) + " at t = " + num(ts[i]));
    }
    if (std::abs(s.value) <= noise_floor(s)) {
      out.skipped.push_back(ts[i]);
      continue;
    }
    if (have_prev && sign_of(samples[prev].value) != sign_of(s.value)) {
      out.brackets.push_back({ts[prev], ts[i], samples[prev].value, s.value});
    }
    prev = i;
    have_prev = true;
  }
  return out;
}

RefinedZero refine(const ZFunction& z, const Bracket& bracket, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "refine tolerance must be positive");
  double lo = bracket.t_lo;
  double hi = bracket.t_hi;
  const int s_lo = sign_of(bracket.z_lo);
  const int s_hi = sign_of(bracket.z_hi);
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
    throw Error(ErrorCode::InvalidArgument, "not a sign-change bracket");
  }
  RefinedZero out;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // no representable midpoint left
    const ZSample s = z(mid);
    ++out.iterations;
    if (s.value == 0.0) {
      lo = hi = mid;
      break;
    }
    if (std::abs(s.value) <= s.err) {
      throw Error(ErrorCode::LostBracket,
                  "sign of Z at t = " + num(mid) + " is below its error estimate " + num(s.err) +
                      " with bracket width " + num(hi - lo));
    }
    if (sign_of(s.value) == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.t = 0.5 * (lo + hi);
  out.width = hi - lo;
  out.abs_L = z(out.t).abs_L;
  return out;
}

ZeroReport find_zeros(const ZFunction& z, double t0, double t1, double step, double tol, const ScanOptions& opts) {
  ZeroReport report;
  report.t0 = t0;
  report.t1 = t1;
  report.step = step;
  ScanResult sr = scan(z, t0, t1, step, opts);
  report.brackets = sr.brackets;
  report.skipped = sr.skipped;
  std::vector<RefinedZero> refined(sr.brackets.size());
  std::vector<std::string> failures(sr.brackets.size());
  parallel_for(sr.brackets.size(), [&](std::size_t i) {
    try {
      refined[i] = refine(z, sr.brackets[i], tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LostBracket) throw;
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (failures[i].empty()) {
      report.zeros.push_back(refined[i]);
    } else {
      report.warnings.push_back(failures[i]);
    }
  }
  return report;
}

ZeroCount count_zeros(const ZeroReport& report) {
  ZeroCount out;
  out.count = report.zeros.size();
  for (const auto& z : report.zeros) ++out.density[static_cast<long long>(std::floor(z.t))];
  return out;
}

}  // namespace twistzero
