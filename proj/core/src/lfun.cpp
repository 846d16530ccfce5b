#include "twistzero/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "twistzero/error.hpp"

namespace twistzero {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const cplx kI(0.0, 1.0);

std::string cusp_text(const Twist& tw) { return std::to_string(tw.p()) + "/" + std::to_string(tw.q()); }

// exp(a) * v for a possibly huge or tiny exp(a).
cplx scaled(cplx log_scale, cplx v) {
  if (v == 0.0) return 0.0;
  return std::exp(log_scale + std::log(v));
}

double scaled_abs(cplx log_scale, double e) {
  if (e == 0.0) return 0.0;
  return std::exp(log_scale.real() + std::log(e));
}

struct SumResult {
  cplx value;
  double abs_sum = 0.0;
  double last_bound = 0.0;
};

}  // namespace

TwistedL::TwistedL(std::shared_ptr<const CoeffTable> table, ReducedRational twist, double self_check_tol)
    : table_(std::move(table)),
      twist_(reduce(twist.p, twist.q), table_ ? table_->level : 1),
      reflected_(twist_.reflected()) {
  if (!table_ || table_->count() == 0) throw Error(ErrorCode::InvalidForm, "empty coefficient table");
  bound_a_ = table_->max_abs_a();
  // Crude growth model |a_n| <= C n^alpha: alpha from the maxima over the
  // first 16 and the last half of the table, with a small margin.
  {
    const auto& a = table_->a;
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t n = 1; n <= a.size(); ++n) {
      if (n < 16) head = std::max(head, std::abs(a[n - 1]));
      if (2 * n >= a.size()) tail = std::max(tail, std::abs(a[n - 1]));
    }
    if (a.size() > 64 && head > 0.0 && tail > head) {
      growth_alpha_ = std::log(tail / head) / std::log(static_cast<double>(a.size()) / 8.0);
    }
    growth_alpha_ += 0.05;
    for (std::size_t n = 1; n <= a.size(); ++n) {
      growth_c_ = std::max(growth_c_, std::abs(a[n - 1]) * std::pow(static_cast<double>(n), -growth_alpha_));
    }
  }
  fe_available_ = is_equiv_infinity(twist_.cusp(), table_->level);
  if (!fe_available_) {
    warnings_.push_back("cusp " + cusp_text(twist_) + " is not Gamma_0(" + std::to_string(table_->level) +
                        ")-equivalent to infinity; functional-equation operations are unavailable");
    return;
  }
  const double nu = table_->nu();
  if (half_integral()) {
    const int k = (table_->weight2 - 1) / 2;
    const Twist* sides[2] = {&twist_, &reflected_};
    for (int side = 0; side < 2; ++side) {
      const std::int64_t d = sides[side]->p_tilde();
      const cplx eps = epsilon_d(d);
      const cplx eps_power = eps == cplx(1.0, 0.0) ? cplx(1.0, 0.0) : std::exp(kI * (kPi / 2.0) * static_cast<double>(-1 - 2 * k));
      chi_[side] = static_cast<double>(jacobi_extended(twist_.q(), d)) * eps_power;
    }
  } else {
    chi_[0] = chi_[1] = 1.0;
  }
  fe_root_ = chi_[0] * std::exp(kI * (kPi / 2.0) * nu);

  if (self_check_tol > 0.0) {
    const cplx ref(nu / 2.0 + 0.5, 0.5);
    const double residual = fe_residual(ref, 1e-13);
    if (!(residual <= self_check_tol)) {
      throw Error(ErrorCode::SelfCheckFailed,
                  "functional equation residual " + std::to_string(residual) + " at the reference point for " +
                      table_->label + " twisted by " + cusp_text(twist_));
    }
  }

  if (half_integral() && twist_.p() % 2 != 0) {
    const int k = (table_->weight2 - 1) / 2;
    sqrt_beta_ = std::sqrt(beta_pq(twist_.p(), twist_.q(), k));
    // H_g is real; fix the sign of beta^{1/2} so that it is positive at the
    // first ordinate where it is not negligible.
    for (double t : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      const Scaled x = completed(cplx(nu / 2.0, t), 0, 1e-13);
      const cplx h = sqrt_beta_ * std::exp(-kI * kPi * nu / 4.0) * scaled(x.log_scale, x.value);
      if (std::abs(h) > 1e3 * scaled_abs(x.log_scale, x.err)) {
        if (h.real() < 0.0) sqrt_beta_ = -sqrt_beta_;
        break;
      }
    }
  }
}

void TwistedL::require_fe(const char* op) const {
  if (!fe_available_) {
    throw Error(ErrorCode::HypothesisViolation,
                std::string(op) + " needs the cusp " + cusp_text(twist_) + " to be Gamma_0(" +
                    std::to_string(table_->level) + ")-equivalent to infinity (N | q)");
  }
}

void TwistedL::require_critical(const char* op) const {
  require_fe(op);
  if (!is_self_inverse(twist_.p(), twist_.q())) {
    throw Error(ErrorCode::HypothesisViolation,
                std::string(op) + " needs p^2 = 1 (mod q); " + cusp_text(twist_) + " violates it");
  }
}

double TwistedL::ray_angle(double t, double tol) {
  // Loss of precision is about e^c; the number of terms scales like 1/c.
  const double c = std::clamp(0.8 * std::log(std::max(tol, 1e-16) / 1e-16), 2.0, 30.0);
  const double a = std::abs(t);
  if (a <= c / (kPi / 2.0)) return 0.0;
  return std::copysign(kPi / 2.0 - c / a, t);
}

std::size_t TwistedL::coefficients_needed(double nu, std::int64_t q, double t_max, double tol) {
  const double t = std::abs(t_max);
  const double phi = ray_angle(t, tol);
  const double transition = t + nu + 10.0;
  const double need = static_cast<double>(q) / kTwoPi *
                      (transition + (std::log(10.0 / tol) + 20.0) / std::max(std::cos(phi), 1e-3));
  return static_cast<std::size_t>(std::ceil(1.1 * need)) + 16;
}

TwistedL::Scaled TwistedL::completed(cplx w, int side, double tol, std::optional<double> phi_override) const {
  require_fe("the smoothed evaluator");
  const double phi = phi_override ? *phi_override : ray_angle(w.imag(), tol);
  if (!(std::abs(phi) < kPi / 2.0)) throw Error(ErrorCode::InvalidArgument, "ray angle must lie in (-pi/2, pi/2)");
  const Twist& principal = side == 0 ? twist_ : reflected_;
  const Twist& dual = side == 0 ? reflected_ : twist_;
  const double nu = table_->nu();
  const double q = static_cast<double>(twist_.q());
  const cplx delta = std::exp(kI * phi);
  const cplx rho = chi_[side] * std::exp(kI * (kPi / 2.0 - phi) * nu);
  const double expo = (nu - 1.0) / 2.0;
  const std::size_t M = table_->count();
  const auto& c = table_->c;

  auto run = [&](cplx order, cplx z1, const Twist& tw) {
    SumResult r;
    const double transition = std::abs(order) + 10.0;
    const double z1_abs = std::abs(z1);
    const IncompleteGammaTail tail(order);
    int quiet = 0;
    for (std::size_t n = 1;; ++n) {
      if (n > M) {
        const double need = q / kTwoPi *
                            (transition + (std::log(10.0 / tol) + 20.0) / std::max(std::cos(phi), 1e-3));
        throw Error(ErrorCode::Convergence,
                    "smoothed sum needs about " + std::to_string(static_cast<long long>(std::ceil(need))) +
                        " coefficients, table has " + std::to_string(M));
      }
      const double dn = static_cast<double>(n);
      const bool past = dn * z1_abs > transition;
      const cplx cn = c[n - 1];
      if (cn == 0.0 && !past) continue;
      const cplx g = tail(dn * z1);
      if (cn != 0.0) {
        const cplx term = cn * tw.root(static_cast<std::int64_t>(n)) * g;
        r.value += term;
        r.abs_sum += std::abs(term);
      }
      if (past) {
        const double bound = bound_a_ * std::pow(dn, expo) * std::abs(g);
        r.last_bound = bound;
        if (bound <= 0.1 * tol * r.abs_sum) {
          if (++quiet >= 3) break;
        } else {
          quiet = 0;
        }
      }
    }
    return r;
  };

  const SumResult s1 = run(w, kTwoPi * delta / q, principal);
  const SumResult s2 = run(nu - w, kTwoPi * std::conj(delta) / q, dual);
  Scaled out;
  out.log_scale = kI * phi * w;
  out.value = s1.value + rho * s2.value;
  out.err = 10.0 * (s1.last_bound + s2.last_bound) + 50.0 * kEps * (s1.abs_sum + s2.abs_sum);
  return out;
}

DirichletSum TwistedL::dirichlet_sum(cplx s, std::size_t M) const {
  M = std::min(M, table_->count());
  DirichletSum out;
  for (std::size_t n = 1; n <= M; ++n) {
    const double dn = static_cast<double>(n);
    out.value += table_->a[n - 1] * twist_.root(static_cast<std::int64_t>(n)) * std::exp(-s * std::log(dn));
  }
  const double sigma = s.real();
  if (sigma > 1.0 + growth_alpha_ && M >= 1) {
    const double ex = sigma - growth_alpha_;
    out.tail_bound = growth_c_ * std::pow(static_cast<double>(M), 1.0 - ex) / (ex - 1.0);
  }
  return out;
}

Estimate TwistedL::smoothed_L(cplx s, double tol) const {
  const double nu = table_->nu();
  const cplx w = s + (nu - 1.0) / 2.0;
  const Scaled x = completed(w, 0, tol);
  const double q = static_cast<double>(twist_.q());
  // L = q^w Lambda(w) q^{-w} (2 pi)^w / Gamma(w)
  const cplx base = x.log_scale + w * (std::log(kTwoPi) - std::log(q));
  const double nearest = std::round(w.real());
  if (nearest <= 0.0 && std::abs(w - nearest) < 0.5) {
    const cplx rg = reciprocal_gamma(w);
    return {std::exp(base) * rg * x.value, std::abs(std::exp(base) * rg) * x.err};
  }
  const cplx lg = log_gamma(w);
  return {scaled(base - lg, x.value), scaled_abs(base - lg, x.err)};
}

Estimate TwistedL::mellin_m0(cplx s, double tol) const {
  const Scaled x = completed(s, 0, tol);
  if (std::abs(s.imag()) < 200.0) {
    const cplx cs = two_cos_half_pi(s);
    const cplx f = std::exp(x.log_scale) * cs;
    return {f * x.value, std::abs(f) * x.err};
  }
  const cplx ls = x.log_scale + log_two_cos_half_pi(s);
  return {scaled(ls, x.value), scaled_abs(ls, x.err)};
}

double TwistedL::fe_residual(cplx s, double tol) const {
  require_fe("fe_residual");
  const double nu = table_->nu();
  const Scaled lhs = completed(s, 0, tol);
  const cplx dual_point = nu - s;
  const double t = dual_point.imag();
  const double natural = ray_angle(t, tol);
  const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 1.0);
  const double shift = std::min(0.3, 3.0 / std::max(std::abs(t), 1e-300));
  double alt = natural - sign * shift;
  alt = std::clamp(alt, -kPi / 2.0 + 0.05, kPi / 2.0 - 0.05);
  const Scaled rhs = completed(dual_point, 1, tol, alt);
  const double m = std::max(lhs.log_scale.real(), rhs.log_scale.real());
  const cplx a = std::exp(lhs.log_scale - m) * lhs.value;
  const cplx b = fe_root_ * std::exp(rhs.log_scale - m) * rhs.value;
  const double denom = std::abs(a) + std::abs(b);
  if (denom == 0.0) return 0.0;
  return std::abs(a - b) / denom;
}

CriticalValue TwistedL::z_f(double t, double tol) const {
  if (half_integral()) throw Error(ErrorCode::InvalidArgument, "z_f needs integral weight; use z_g");
  require_critical("z_f");
  const double nu = table_->nu();
  const int k = table_->weight2 / 2;
  const cplx w(nu / 2.0, t);
  const Scaled x = completed(w, 0, tol);
  const double q = static_cast<double>(twist_.q());
  const cplx lg = log_gamma(w);
  // i^{-k/2} (2 pi / q)^{k/2} q^w Lambda(w) / |Gamma(w)|
  const cplx phase = std::exp(-kI * (kPi / 4.0) * static_cast<double>(k));
  const cplx zlog = x.log_scale + (k / 2.0) * std::log(kTwoPi / q) - lg.real();
  const cplx llog = x.log_scale + w * (std::log(kTwoPi) - std::log(q)) - lg;
  CriticalValue out;
  out.t = t;
  out.Z = phase * scaled(zlog, x.value);
  out.L = scaled(llog, x.value);
  out.err_est = scaled_abs(zlog, x.err);
  return out;
}

CriticalValue TwistedL::z_f_literal(double t, double tol) const {
  if (half_integral()) throw Error(ErrorCode::InvalidArgument, "z_f needs integral weight; use z_g");
  require_critical("z_f");
  const double nu = table_->nu();
  const int k = table_->weight2 / 2;
  const cplx w(nu / 2.0, t);
  const cplx cs = two_cos_half_pi(w);
  if (cs == 0.0) throw Error(ErrorCode::CosineZero, "cos(pi (k/2 + it)/2) vanishes at t = " + std::to_string(t));
  const Estimate m = mellin_m0(w, tol);
  const double q = static_cast<double>(twist_.q());
  const cplx phase = std::exp(-kI * (kPi / 4.0) * static_cast<double>(k));
  const double g = std::abs(complex_gamma(w));
  const double pre = std::pow(kTwoPi / q, k / 2.0) / g;
  CriticalValue out;
  out.t = t;
  out.Z = phase * pre * m.value / cs;
  out.err_est = pre * m.err / std::abs(cs);
  out.L = smoothed_L(cplx(0.5, t), tol).value;
  return out;
}

Estimate TwistedL::h_g(double t, double tol) const {
  if (!half_integral()) throw Error(ErrorCode::InvalidArgument, "h_g needs half-integral weight");
  require_critical("h_g");
  if (twist_.p() % 2 == 0) throw Error(ErrorCode::EvenP, "h_g needs odd p");
  const double nu = table_->nu();
  const cplx w(nu / 2.0, t);
  const Scaled x = completed(w, 0, tol);
  const cplx f = sqrt_beta_ * std::exp(-kI * kPi * nu / 4.0);
  return {f * scaled(x.log_scale, x.value), scaled_abs(x.log_scale, x.err)};
}

CriticalValue TwistedL::z_g(double t, double tol) const {
  if (!half_integral()) throw Error(ErrorCode::InvalidArgument, "z_g needs half-integral weight");
  require_critical("z_g");
  if (twist_.p() % 2 == 0) throw Error(ErrorCode::EvenP, "z_g needs odd p");
  const double nu = table_->nu();
  const cplx w(nu / 2.0, t);
  const Scaled x = completed(w, 0, tol);
  const double q = static_cast<double>(twist_.q());
  const cplx lg = log_gamma(w);
  const cplx f = sqrt_beta_ * std::exp(-kI * kPi * nu / 4.0);
  const cplx zlog = x.log_scale + (nu / 2.0) * std::log(kTwoPi / q) - lg.real();
  const cplx llog = x.log_scale + w * (std::log(kTwoPi) - std::log(q)) - lg;
  CriticalValue out;
  out.t = t;
  out.Z = f * scaled(zlog, x.value);
  out.L = scaled(llog, x.value);
  out.err_est = scaled_abs(zlog, x.err);
  return out;
}

CriticalValue TwistedL::z(double t, double tol) const { return half_integral() ? z_g(t, tol) : z_f(t, tol); }

double two_phase_lower_bound(double theta1, double theta2, double alpha, double beta) {
  return std::abs(std::sin(theta2 - theta1)) * (std::abs(alpha) + std::abs(beta)) / 2.0;
}

}  // namespace twistzero
