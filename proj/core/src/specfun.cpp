#include "twistzero/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "twistzero/error.hpp"

namespace twistzero {
namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};
constexpr double kHalfLogTwoPi = 0.91893853320467274178;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 200000;

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// Lanczos form, valid for Re s >= 1/2.
cplx log_gamma_right(cplx s) {
  cplx sum = kLanczos[0];
  for (std::size_t i = kLanczos.size() - 1; i > 0; --i) {
    sum += kLanczos[i] / (s + static_cast<double>(i));
  }
  const cplx tmp = s + kLanczosG + 0.5;
  return (s + 0.5) * std::log(tmp) - tmp + kHalfLogTwoPi + std::log(sum / s);
}

// log sin(pi s), stable for large |Im s|.
cplx log_sin_pi(cplx s) {
  if (s.imag() < 0.0) return std::conj(log_sin_pi(std::conj(s)));
  const cplx i(0.0, 1.0);
  const cplx e2 = std::exp(2.0 * kPi * i * s);  // |e2| <= 1
  return std::log(cplx(0.0, 0.5)) - i * kPi * s + std::log(1.0 - e2);
}

// cos(pi a / 2) and sin(pi a / 2) with exact values at integer a.
void cos_sin_half_pi(double a, double& c, double& s) {
  double r = std::fmod(a, 4.0);
  if (r < 0) r += 4.0;
  if (r == std::floor(r)) {
    static constexpr double kCos[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double kSin[4] = {0.0, 1.0, 0.0, -1.0};
    c = kCos[static_cast<int>(r)];
    s = kSin[static_cast<int>(r)];
    return;
  }
  c = std::cos(kPi * r / 2.0);
  s = std::sin(kPi * r / 2.0);
}

cplx tail_series(cplx w, cplx z, cplx log_gamma_w) {
  cplx term = 1.0 / w;
  cplx sum = term;
  const double az = std::abs(z);
  for (int j = 1; j < kMaxIterations; ++j) {
    term *= z / (w + static_cast<double>(j));
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum) && std::abs(w + static_cast<double>(j)) > az) {
      return std::exp(log_gamma_w - w * std::log(z)) - std::exp(-z) * sum;
    }
  }
  throw Error(ErrorCode::Convergence, "incomplete gamma series did not converge");
}

cplx tail_continued_fraction(cplx w, cplx z) {
  constexpr double kTiny = 1e-300;
  cplx b = z + 1.0 - w;
  cplx c = 1.0 / kTiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - w);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) return std::exp(-z) * h;
  }
  throw Error(ErrorCode::Convergence, "incomplete gamma continued fraction did not converge");
}

// w = -m exactly: Gamma(-m, z) = (-1)^m/m! [E1(z) - e^{-z} sum_{j<m} (-1)^j j! / z^{j+1}].
cplx tail_integer_order(int m, cplx z) {
  cplx e1 = -kEulerGamma - std::log(z);
  cplx term = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= -z / static_cast<double>(k);
    const cplx add = -term / static_cast<double>(k);
    e1 += add;
    if (std::abs(add) <= kEps * std::abs(e1)) break;
  }
  cplx finite = 0.0;
  double fact = 1.0;
  cplx zpow = z;
  for (int j = 0; j < m; ++j) {
    if (j > 0) {
      fact *= j;
      zpow *= z;
    }
    finite += ((j % 2 == 0) ? 1.0 : -1.0) * fact / zpow;
  }
  double mfact = 1.0;
  for (int j = 2; j <= m; ++j) mfact *= j;
  const cplx upper = ((m % 2 == 0) ? 1.0 : -1.0) / mfact * (e1 - std::exp(-z) * finite);
  return std::pow(z, static_cast<double>(m)) * upper;
}

}  // namespace

cplx log_gamma(cplx s) {
  if (is_nonpositive_integer(s)) {
    throw Error(ErrorCode::Pole, "Gamma has a pole at s = " + std::to_string(s.real()));
  }
  if (s.real() >= 0.5) return log_gamma_right(s);
  return std::log(kPi) - log_sin_pi(s) - log_gamma_right(1.0 - s);
}

cplx complex_gamma(cplx s) {
  if (is_nonpositive_integer(s)) {
    throw Error(ErrorCode::Pole, "Gamma has a pole at s = " + std::to_string(s.real()));
  }
  if (s.real() < 0.5 && std::abs(s.imag()) < 100.0) {
    return kPi / (std::sin(kPi * s) * std::exp(log_gamma_right(1.0 - s)));
  }
  return std::exp(log_gamma(s));
}

cplx reciprocal_gamma(cplx s) {
  if (is_nonpositive_integer(s)) return 0.0;
  if (s.real() < 0.5 && std::abs(s.imag()) < 100.0) {
    return std::sin(kPi * s) / kPi * std::exp(log_gamma_right(1.0 - s));
  }
  return std::exp(-log_gamma(s));
}

namespace {

bool is_real_nonpositive_integer_like(cplx w) {
  const double nearest = std::round(w.real());
  return nearest <= 0.0 && std::abs(w - cplx(nearest, 0.0)) < 1e-3;
}

}  // namespace

IncompleteGammaTail::IncompleteGammaTail(cplx w)
    : w_(w), abs_w_(std::abs(w)), has_log_gamma_(!is_nonpositive_integer(w)) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw Error(ErrorCode::InvalidArgument, "incomplete gamma tail needs finite w");
  }
  if (has_log_gamma_) log_gamma_w_ = log_gamma(w);
}

cplx IncompleteGammaTail::operator()(cplx z) const {
  if (!(z.real() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidArgument, "incomplete gamma tail needs Re z > 0");
  }
  const double az = std::abs(z);
  if (is_real_nonpositive_integer_like(w_)) {
    const double nearest = std::round(w_.real());
    const double dist = std::abs(w_ - cplx(nearest, 0.0));
    if (dist < 1e-13 && az < 0.5) return tail_integer_order(static_cast<int>(-nearest), z);
    if (az >= 0.2) return tail_continued_fraction(w_, z);
  }
  if (az < abs_w_ + 1.0) return tail_series(w_, z, log_gamma_w_);
  return tail_continued_fraction(w_, z);
}

cplx incomplete_gamma_tail(cplx w, cplx z) { return IncompleteGammaTail(w)(z); }

cplx upper_incomplete_gamma(cplx s, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "upper incomplete gamma needs x > 0");
  return std::exp(s * std::log(x)) * incomplete_gamma_tail(s, cplx(x, 0.0));
}

cplx two_cos_half_pi(cplx s) {
  double c = 0.0;
  double sn = 0.0;
  cos_sin_half_pi(s.real(), c, sn);
  const double y = kPi * s.imag() / 2.0;
  return 2.0 * cplx(c * std::cosh(y), -sn * std::sinh(y));
}

cplx log_two_cos_half_pi(cplx s) {
  if (s.imag() == 0.0 && std::fmod(std::abs(s.real()), 2.0) == 1.0) {
    throw Error(ErrorCode::CosineZero, "cos(pi s / 2) vanishes");
  }
  const cplx i(0.0, 1.0);
  cplx rest;
  cplx lead;
  if (s.imag() >= 0.0) {
    lead = -i * (kPi / 2.0) * s;
    rest = 1.0 + std::exp(i * kPi * s);
  } else {
    lead = i * (kPi / 2.0) * s;
    rest = 1.0 + std::exp(-i * kPi * s);
  }
  if (rest == 0.0) throw Error(ErrorCode::CosineZero, "cos(pi s / 2) vanishes");
  return lead + std::log(rest);
}

cplx g_delta(cplx s, int delta) {
  if (delta != 0 && delta != 1) {
    throw Error(ErrorCode::InvalidArgument, "delta must be 0 or 1");
  }
  if (is_nonpositive_integer(s)) {
    throw Error(ErrorCode::Pole, "G_delta inherits the Gamma pole at s = " + std::to_string(s.real()));
  }
  const cplx idelta = delta == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  const cplx shifted = s - static_cast<double>(delta);
  cplx value;
  if (std::abs(s.imag()) < 100.0) {
    const cplx cosine = two_cos_half_pi(shifted);
    if (cosine == 0.0) return 0.0;
    value = idelta * std::exp(-s * std::log(kTwoPi)) * complex_gamma(s) * cosine;
  } else {
    value = idelta * std::exp(-s * std::log(kTwoPi) + log_gamma(s) + log_two_cos_half_pi(shifted));
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw Error(ErrorCode::Overflow, "G_delta overflowed");
  }
  return value;
}

double g0_modulus_asymptotic(double sigma, double t) {
  if (!(std::abs(t) >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "asymptotic modulus needs |t| >= 1");
  }
  return std::pow(std::abs(t) / kTwoPi, sigma - 0.5);
}

}  // namespace twistzero
