#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistzero/arith.hpp"
#include "twistzero/qseries.hpp"
#include "twistzero/specfun.hpp"

namespace twistzero {

/// A value with an absolute error estimate.
struct Estimate {
  cplx value;
  double err = 0.0;
};

struct DirichletSum {
  cplx value;
  /// Bound on the omitted tail, present when the tail converges absolutely.
  std::optional<double> tail_bound;
};

struct CriticalValue {
  double t = 0.0;
  cplx L;          // L_{p/q}(1/2 + it)
  cplx Z;          // should be real up to err_est
  double err_est = 0.0;
};

/// Additively twisted L-function L_{p/q}(s) = sum a_n e(np/q) n^{-s} of a
/// cusp form, continued to all s by a smoothed (incomplete gamma) sum.
///
/// The completed function Lambda(w) = (2 pi)^{-w} Gamma(w) L(w - (nu-1)/2)
/// is written as a Mellin integral of f(p/q + iy) along the ray y in
/// e^{i phi} R_+, split at |y| = 1/q, and the lower piece is mapped to the
/// cusp -p~/q by gamma = (p r; q p~). Rotating the ray by phi close to
/// +-pi/2 keeps the terms on the scale of the result for large |Im w|.
class TwistedL {
 public:
  /// Throws SelfCheckFailed if the functional equation is not met at a
  /// reference point (only when the cusp is equivalent to infinity).
  TwistedL(std::shared_ptr<const CoeffTable> table, ReducedRational twist, double self_check_tol = 1e-8);

  const CoeffTable& table() const { return *table_; }
  const Twist& twist() const { return twist_; }
  const Twist& reflected_twist() const { return reflected_; }
  double nu() const { return table_->nu(); }
  bool half_integral() const { return table_->weight2 % 2 != 0; }
  /// True when the cusp is Gamma_0(N)-equivalent to infinity.
  bool fe_available() const { return fe_available_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// sum_{n <= M} a_n e(np/q) n^{-s}.
  DirichletSum dirichlet_sum(cplx s, std::size_t M) const;

  /// L_{p/q}(s). `tol` is relative to the magnitude of the contributing
  /// terms, which is the natural scale near zeros of L.
  Estimate smoothed_L(cplx s, double tol = 1e-12) const;

  /// M_0 tau_{p/q}(s) = q^s L_{p/q}(s - (nu-1)/2) G_0(s).
  Estimate mellin_m0(cplx s, double tol = 1e-12) const;

  /// Relative residual of the functional equation at s, with the two sides
  /// evaluated on different integration rays. The 2cos(pi s/2) factor that
  /// both sides share is divided out.
  double fe_residual(cplx s, double tol = 1e-12) const;

  CriticalValue z_f(double t, double tol = 1e-12) const;
  Estimate h_g(double t, double tol = 1e-12) const;
  CriticalValue z_g(double t, double tol = 1e-12) const;
  /// z_f or z_g according to the weight.
  CriticalValue z(double t, double tol = 1e-12) const;

  /// Literal form of Z_f: M_0tau / (2 cos(pi w / 2)) with the cosine
  /// evaluated separately. Throws CosineZero where it vanishes.
  CriticalValue z_f_literal(double t, double tol = 1e-12) const;

  /// q^w Lambda_{p/q}(w) (side 0) or q^w Lambda_{-p~/q}(w) (side 1) as
  /// exp(log_scale) * value. `phi` overrides the ray angle.
  struct Scaled {
    cplx log_scale;
    cplx value;
    double err = 0.0;
  };
  Scaled completed(cplx w, int side, double tol, std::optional<double> phi = std::nullopt) const;

  /// Table size the smoothed evaluator needs for |Im s| <= t_max at tol.
  static std::size_t coefficients_needed(double nu, std::int64_t q, double t_max, double tol);

  /// Root number in q^w Lambda(w) = rho q^{nu - w} Lambda'(nu - w).
  cplx fe_root() const { return fe_root_; }
  /// beta_{p/q}^{1/2} with the sign fixed at construction (half-integral only).
  cplx sqrt_beta() const { return sqrt_beta_; }

 private:
  void require_fe(const char* op) const;
  void require_critical(const char* op) const;
  static double ray_angle(double t, double tol);

  std::shared_ptr<const CoeffTable> table_;
  Twist twist_;
  Twist reflected_;
  bool fe_available_ = false;
  cplx chi_[2];   // symbol part of the root factor for each side
  cplx fe_root_;  // rho for side 0
  cplx sqrt_beta_{1.0, 0.0};
  double bound_a_ = 0.0;
  double growth_alpha_ = 0.0;
  double growth_c_ = 0.0;
  std::vector<std::string> warnings_;
};

/// |sin(theta2 - theta1)| (|alpha| + |beta|) / 2, a lower bound for
/// |e^{i theta1} alpha + e^{i theta2} beta|.
double two_phase_lower_bound(double theta1, double theta2, double alpha, double beta);

}  // namespace twistzero
