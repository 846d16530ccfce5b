#include "twistzero/hlharness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "twistzero/error.hpp"
#include "twistzero/parallel.hpp"
#include "twistzero/quadrature.hpp"

namespace twistzero {
namespace {

constexpr std::size_t kMellinPanels = 64;
constexpr std::size_t kMellinOrder = 16;
constexpr int kTailMax = 300;  // u(300) is far below double precision of the mass

double bump(double b, double v) {
  if (!(std::abs(v) < 1.0)) return 0.0;
  return std::exp(b * (1.0 - 1.0 / (1.0 - v * v)));
}

double bump_square_integral(double b) {
  return integrate_composite([b](double v) { return bump(b, v) * bump(b, v); }, -1.0, 1.0, 64, 32);
}

// Natural cubic spline second derivatives on a uniform grid.
std::vector<double> spline_m2(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double rhs = 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
    const double denom = 4.0 - c[i - 1];
    c[i] = 1.0 / denom;
    d[i] = (rhs - d[i - 1]) / denom;
  }
  for (std::size_t i = n - 2; i >= 1; --i) m[i] = d[i] - c[i] * m[i + 1];
  return m;
}

}  // namespace

BumpFamily::BumpFamily(BumpOptions opts) : b_(opts.sharpness) {
  if (!(b_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump sharpness must be positive");
  if (opts.normalize) {
    // int phi_b^2 decreases in b from 2 (b -> 0) and is below 1 at b = 1
    double lo = 1e-3;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (bump_square_integral(mid) > 1.0 ? lo : hi) = mid;
    }
    b_ = 0.5 * (lo + hi);
  }
  lambda1_ = bump_square_integral(b_);

  const GaussRule& rule = gauss_legendre(kMellinOrder);
  const double h = 1.0 / static_cast<double>(kMellinPanels);
  for (std::size_t k = 0; k < kMellinPanels; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * h;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double v = mid + 0.5 * h * rule.nodes[j];
      v_nodes_.push_back(v);
      v_weights_.push_back(h * rule.weights[j] * phi(v));  // 2 * (h/2) * w
    }
  }

  const std::size_t n = std::max<std::size_t>(opts.lambda_grid, 5);
  const double step = 4.0 / static_cast<double>(n - 1);
  grid_.resize(n);
  lam_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid_[i] = -2.0 + step * static_cast<double>(i);
    lam_[i] = lambda_direct(std::exp(grid_[i]));
  }
  lam_.front() = lam_.back() = 0.0;
  lam_m2_ = spline_m2(lam_, step);

  tail_.assign(kTailMax + 1, 0.0);
  for (int k = kTailMax - 1; k >= 0; --k) {
    tail_[k] = tail_[k + 1] +
               integrate_composite([this](double y) { return u(y); }, k, k + 1.0, 2, 16);
  }
}

double BumpFamily::phi(double v) const { return bump(b_, v); }

double BumpFamily::psi(double x) const { return x > 0.0 ? phi(std::log(x)) : 0.0; }

double BumpFamily::lambda(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double l = std::log(x);
  if (l <= grid_.front() || l >= grid_.back()) return 0.0;
  const double h = grid_[1] - grid_[0];
  const auto i = std::min(static_cast<std::size_t>((l - grid_.front()) / h), grid_.size() - 2);
  const double a = (grid_[i + 1] - l) / h;
  const double b = 1.0 - a;
  return a * lam_[i] + b * lam_[i + 1] +
         ((a * a * a - a) * lam_m2_[i] + (b * b * b - b) * lam_m2_[i + 1]) * h * h / 6.0;
}

double BumpFamily::lambda_direct(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double l = std::log(x);
  const double lo = std::max(-1.0, l - 1.0);
  const double hi = std::min(1.0, l + 1.0);
  if (!(hi > lo)) return 0.0;
  return integrate_composite([this, l](double v) { return phi(v) * phi(l - v); }, lo, hi, 8, 32);
}

cplx BumpFamily::lambda_T(double T, double x) const {
  if (!(x > 0.0)) return {0.0, 0.0};
  const double phase = -2.0 * T * std::sqrt(T) * std::log(x);
  return T * std::polar(1.0, phase) * lambda(std::pow(x, T));
}

double BumpFamily::mellin_psi(double t) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < v_nodes_.size(); ++j) acc += v_weights_[j] * std::cos(t * v_nodes_[j]);
  return acc;
}

double BumpFamily::u(double t) const {
  const double m = mellin_psi(t);
  return m * m;
}

double BumpFamily::u_T(double T, double t) const {
  return u((t - 2.0 * T * std::sqrt(T)) / T);
}

double BumpFamily::tail_mass(double W) const {
  W = std::abs(W);
  if (W >= kTailMax) return 0.0;
  const int k = static_cast<int>(std::floor(W));
  double one_side = tail_[k];
  if (W > k) one_side -= integrate_composite([this](double y) { return u(y); }, k, W, 1, 16);
  return 2.0 * std::max(one_side, 0.0);
}

double BumpFamily::support_halfwidth(double rel_tol) const {
  for (int k = 1; k <= kTailMax; ++k) {
    if (2.0 * tail_[k] <= rel_tol * mass()) return k;
  }
  return kTailMax;
}

void require_window_T(double T) {
  if (!(T > kMinWindowT)) {
    throw Error(ErrorCode::HypothesisViolation,
                "T = " + std::to_string(T) + " does not exceed 2/log 2; lambda_T(n) need not vanish for n >= 2");
  }
}

WindowResult integrate_window(const BumpFamily& family, double T, const WindowIntegrand& f,
                              const WindowOptions& opts) {
  if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "window T must be positive");
  const double tail_tol = opts.tail_tol > 0.0 ? opts.tail_tol : opts.rel_tol / 10.0;
  double W = opts.halfwidth > 0.0 ? opts.halfwidth : family.support_halfwidth(tail_tol);
  const double width = opts.panel_width > 0.0 ? opts.panel_width : std::min(4.0, T / 2.0);
  const double center = 2.0 * T * std::sqrt(T);
  std::size_t probes = 0;
  const auto weighted = [&](double t) {
    ++probes;
    return std::abs(f(t, 1e-8).value) * family.u_T(T, t);
  };

  double peak = 0.0;
  for (int i = -8; i <= 8; ++i) peak = std::max(peak, weighted(center + 0.25 * i * T));
  // u has isolated zeros, so look at a few points inside each end
  const auto edge_at = [&](double w) {
    double e = 0.0;
    for (double d : {0.0, 0.25, 0.5}) {
      e = std::max({e, weighted(center - (w - d) * T), weighted(center + (w - d) * T)});
    }
    return e;
  };
  double edge = edge_at(W);
  if (opts.edge_tol > 0.0) {
    while (edge > opts.edge_tol * peak && W < 300.0) {
      W += std::max(1.0, 0.1 * W);
      edge = edge_at(W);
    }
  }

  const double a = center - W * T;
  const double span = 2.0 * W * T;
  const auto panels = static_cast<std::size_t>(std::ceil(span / width));
  const double h = span / static_cast<double>(panels);
  const GaussRule& rule = gauss_legendre(opts.order);

  // Node accuracy so that every node contributes about the same absolute
  // error; the total then stays near rel_tol times the integral of |f| u_T.
  const double u_budget = opts.rel_tol * family.mass() / (2.0 * W);
  struct Panel {
    cplx value;
    double abs_value = 0.0;
    double err = 0.0;
  };
  std::vector<Panel> out(panels);
  parallel_for(panels, [&](std::size_t k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * h;
    Panel p;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double t = mid + 0.5 * h * rule.nodes[j];
      const double ut = family.u_T(T, t);
      const double w = 0.5 * h * rule.weights[j];
      if (ut <= 0.0) continue;
      const double node_tol = std::clamp(u_budget / ut, std::max(opts.rel_tol * 1e-3, 1e-14), 1e-3);
      const Estimate e = f(t, node_tol);
      p.value += w * ut * e.value;
      p.abs_value += w * ut * std::abs(e.value);
      p.err += w * ut * e.err;
    }
    out[k] = p;
  });

  WindowResult r;
  r.halfwidth = W;
  r.evaluations = panels * rule.nodes.size() + probes;
  for (const Panel& p : out) {
    r.value += p.value;
    r.abs_value += p.abs_value;
    r.err += p.err;
  }
  r.edge_ratio = peak > 0.0 ? edge / peak : 0.0;
  // outside the window: u_T mass beyond W times the size of |f| at the ends
  const double u_edge = std::max(family.u(W), family.u(W - 0.5));
  if (u_edge > 0.0) r.err += family.tail_mass(W) * T * edge / u_edge;
  return r;
}

LutlemResult verify_lutlem(const TwistedL& L, const BumpFamily& family, double T, cplx s,
                           const WindowOptions& opts) {
  require_window_T(T);
  const WindowResult w = integrate_window(
      family, T, [&L, s](double t, double tol) { return L.smoothed_L(s + cplx(0.0, t), tol); }, opts);
  LutlemResult r;
  r.lhs = w.value;
  r.rhs = kTwoPi * L.table().a.at(0) * L.twist().root(1) * family.lambda_at_1() * T;
  r.rel_err = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
  r.quad_err = w.err;
  r.halfwidth = w.halfwidth;
  r.evaluations = w.evaluations;
  return r;
}

double loglog_slope(const std::vector<ProbeRow>& rows) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double n = 0.0;
  for (const ProbeRow& r : rows) {
    if (!(r.value > 0.0) || !(r.T > 0.0)) continue;
    const double x = std::log(r.T);
    const double y = std::log(r.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  if (n < 2.0) return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / den;
}

ProbeTable decay_probe(const TwistedL& L, const BumpFamily& family, const std::vector<double>& Ts,
                       const WindowOptions& opts) {
  ProbeTable table;
  const double re = L.nu() / 2.0;
  WindowOptions o = opts;
  if (!(o.edge_tol > 0.0)) o.edge_tol = 1e-3;
  for (double T : Ts) {
    require_window_T(T);
    const WindowResult w = integrate_window(
        family, T, [&L, re](double t, double tol) { return L.mellin_m0(cplx(re, t), tol); }, o);
    table.rows.push_back({T, std::abs(w.value), w.err, w.halfwidth, w.edge_ratio});
  }
  table.slope = loglog_slope(table.rows);
  return table;
}

ProbeTable tail_probe(const BumpFamily& family, const std::function<double(double)>& f,
                      const std::vector<double>& Ts) {
  ProbeTable table;
  for (double T : Ts) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "tail_probe T must be positive");
    const double center = 2.0 * T * std::sqrt(T);
    // x = center + T y, |x - center| > T^{3/2} is |y| > sqrt(T)
    const double y0 = std::sqrt(T);
    double total = 0.0;
    if (y0 < kTailMax) {
      const auto panels = static_cast<std::size_t>(std::ceil(kTailMax - y0)) * 2;
      total = integrate_composite(
          [&](double y) {
            return (std::abs(f(center + T * y)) + std::abs(f(center - T * y))) * family.u(y);
          },
          y0, static_cast<double>(kTailMax), panels, 16);
      total *= T;
    }
    table.rows.push_back({T, total, 0.0, static_cast<double>(kTailMax), 0.0});
  }
  table.slope = loglog_slope(table.rows);
  return table;
}

std::string to_string(Verdict v) {
  return v == Verdict::SignChangeForced ? "SignChangeForced" : "Inconclusive";
}

HLResult hl_experiment(const BumpFamily& family, double T, const RealIntegrand& z, const WindowOptions& opts) {
  require_window_T(T);
  const WindowResult w = integrate_window(
      family, T,
      [&z](double t, double tol) {
        const ZSample s = z(t, tol);
        return Estimate{cplx(s.value, 0.0), s.err};
      },
      opts);
  HLResult r;
  r.T = T;
  r.I_signed = w.value.real();
  r.I_abs = w.abs_value;
  // the same node errors bound both integrals
  r.err = 2.0 * w.err;
  r.ratio = r.I_signed != 0.0 ? r.I_abs / std::abs(r.I_signed) : std::numeric_limits<double>::infinity();
  r.halfwidth = w.halfwidth;
  r.evaluations = w.evaluations;
  r.verdict = std::abs(r.I_signed) < r.I_abs - r.err ? Verdict::SignChangeForced : Verdict::Inconclusive;
  return r;
}

HLResult hl_experiment(const TwistedL& L, const BumpFamily& family, double T, const WindowOptions& opts) {
  return hl_experiment(
      family, T,
      [&L](double t, double tol) {
        const CriticalValue v = L.z(t, tol);
        return ZSample{v.Z.real(), v.Z.imag(), v.err_est, std::abs(v.L)};
      },
      opts);
}

}  // namespace twistzero
