#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "twistzero/lfun.hpp"
#include "twistzero/zeros.hpp"

namespace twistzero {

/// Supports lambda_T(n) = 0 for n >= 2 only above this T.
inline constexpr double kMinWindowT = 2.0 / 0.69314718055994530942;

struct BumpOptions {
  /// phi(v) = exp(b (1 - 1/(1 - v^2))); b = 1 is the plain bump.
  double sharpness = 1.0;
  /// Choose b so that lambda(1) = int phi^2 = 1.
  bool normalize = false;
  /// Grid points for the lambda spline on log x in [-2, 2].
  std::size_t lambda_grid = 801;
};

/// phi, psi(x) = phi(log x), lambda = psi * psi (multiplicative), and the
/// window u(t) = (M psi(it))^2, u_T(t) = u((t - 2T^{3/2}) / T).
class BumpFamily {
 public:
  explicit BumpFamily(BumpOptions opts = {});

  double sharpness() const { return b_; }
  double phi(double v) const;
  double psi(double x) const;
  /// Spline interpolant of lambda.
  double lambda(double x) const;
  /// lambda(x) by direct quadrature of int phi(v) phi(log x - v) dv.
  double lambda_direct(double x) const;
  double lambda_at_1() const { return lambda1_; }
  /// lambda_T(x) = T x^{-2iT^{3/2}} lambda(x^T).
  cplx lambda_T(double T, double x) const;

  /// M psi(it) = 2 int_0^1 phi(v) cos(tv) dv.
  double mellin_psi(double t) const;
  double u(double t) const;
  double u_T(double T, double t) const;

  /// int u = 2 pi lambda(1).
  double mass() const { return kTwoPi * lambda1_; }
  /// int_{|y| > W} u(y) dy.
  double tail_mass(double W) const;
  /// Smallest tabulated W with tail_mass(W) <= rel_tol * mass().
  double support_halfwidth(double rel_tol) const;

 private:
  double b_;
  double lambda1_ = 0.0;
  std::vector<double> v_nodes_;    // quadrature on [0, 1] for M psi
  std::vector<double> v_weights_;  // weights times phi(v)
  std::vector<double> grid_;       // log x grid for lambda
  std::vector<double> lam_;
  std::vector<double> lam_m2_;     // spline second derivatives
  std::vector<double> tail_;       // tail_[k] = int_k^inf u, k = 0..kTailMax
};

struct WindowOptions {
  /// Target accuracy relative to the integral of |f| u_T.
  double rel_tol = 1e-8;
  /// Relative tail mass that decides the half-width W (0: rel_tol / 10).
  double tail_tol = 0.0;
  /// Panel width in t (0: min(4, T / 2)).
  double panel_width = 0.0;
  std::size_t order = 32;
  /// Override the half-width W in units of T (0: from tail_tol).
  double halfwidth = 0.0;
  /// Widen W until |f u_T| near both ends is at most edge_tol times its
  /// peak (0: off).
  double edge_tol = 0.0;
};

struct WindowResult {
  cplx value;              // int f u_T
  double abs_value = 0.0;  // int |f| u_T
  double err = 0.0;
  double halfwidth = 0.0;  // W, window is |t - 2T^{3/2}| <= W T
  std::size_t evaluations = 0;
  double edge_ratio = 0.0; // max |f u_T| at the two window ends / max |f u_T|
};

/// f(t, tol) returns the integrand value and an absolute error estimate; tol
/// is the relative accuracy requested at that node.
using WindowIntegrand = std::function<Estimate(double, double)>;

WindowResult integrate_window(const BumpFamily& family, double T, const WindowIntegrand& f,
                              const WindowOptions& opts = {});

struct LutlemResult {
  cplx lhs;
  cplx rhs;
  double rel_err = 0.0;
  double quad_err = 0.0;
  double halfwidth = 0.0;
  std::size_t evaluations = 0;
};

/// int L(s + it) u_T(t) dt against 2 pi a_1 e(p/q) lambda(1) T.
LutlemResult verify_lutlem(const TwistedL& L, const BumpFamily& family, double T, cplx s,
                           const WindowOptions& opts = {});

struct ProbeRow {
  double T = 0.0;
  double value = 0.0;  // modulus of the probed integral
  double err = 0.0;
  double halfwidth = 0.0;
  double edge_ratio = 0.0;
};

struct ProbeTable {
  std::vector<ProbeRow> rows;
  /// Least-squares slope of log value against log T.
  double slope = 0.0;
};

double loglog_slope(const std::vector<ProbeRow>& rows);

/// |int M_0 tau(nu/2 + it) u_T(t) dt| for each T. edge_tol defaults to 1e-3
/// since the integrand grows polynomially in t.
ProbeTable decay_probe(const TwistedL& L, const BumpFamily& family, const std::vector<double>& Ts,
                       const WindowOptions& opts = {});

/// int_{|x - 2T^{3/2}| > T^{3/2}} |f(x)| u_T(x) dx for each T.
ProbeTable tail_probe(const BumpFamily& family, const std::function<double(double)>& f,
                      const std::vector<double>& Ts);

enum class Verdict { SignChangeForced, Inconclusive };
std::string to_string(Verdict v);

struct HLResult {
  double T = 0.0;
  double I_signed = 0.0;
  double I_abs = 0.0;
  double err = 0.0;
  double ratio = 0.0;  // I_abs / |I_signed|
  double halfwidth = 0.0;
  std::size_t evaluations = 0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Real-valued integrand with requested node accuracy.
using RealIntegrand = std::function<ZSample(double, double)>;

HLResult hl_experiment(const BumpFamily& family, double T, const RealIntegrand& z, const WindowOptions& opts = {});
HLResult hl_experiment(const TwistedL& L, const BumpFamily& family, double T, const WindowOptions& opts = {});

/// Throws HypothesisViolation unless T > 2 / log 2.
void require_window_T(double T);

}  // namespace twistzero
