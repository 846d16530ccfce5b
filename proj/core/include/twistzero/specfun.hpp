#pragma once

#include <complex>

namespace twistzero {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Gamma function for complex argument (Lanczos, g = 607/128, 15 terms) with
/// reflection for Re s < 1/2. Throws Error(Pole) at non-positive integers.
cplx complex_gamma(cplx s);

/// log Gamma(s). The imaginary part is continuous in s on the right half
/// plane; it is only meant to be exponentiated or used for its real part.
cplx log_gamma(cplx s);

/// 1/Gamma(s); entire, so no pole error.
cplx reciprocal_gamma(cplx s);

/// Scaled upper tail  G(w, z) = \int_1^\infty e^{-z u} u^{w-1} du  for
/// Re z > 0, so that Gamma(w, z) = z^w G(w, z).  Series below the
/// transition |z| = |w| + 1, Lentz continued fraction above it.
cplx incomplete_gamma_tail(cplx w, cplx z);

/// G(w, .) for a fixed order w; caches log Gamma(w) for repeated calls.
class IncompleteGammaTail {
 public:
  explicit IncompleteGammaTail(cplx w);
  cplx operator()(cplx z) const;

 private:
  cplx w_;
  double abs_w_;
  bool has_log_gamma_;
  cplx log_gamma_w_;
};

/// Upper incomplete gamma Gamma(s, x) for real x > 0.
cplx upper_incomplete_gamma(cplx s, double x);

/// 2 cos(pi s / 2), exactly zero at odd integers.
cplx two_cos_half_pi(cplx s);

/// log(2 cos(pi s / 2)) without overflow for large |Im s|.
cplx log_two_cos_half_pi(cplx s);

/// G_delta(s) = 2 i^delta (2 pi)^{-s} Gamma(s) cos(pi (s - delta) / 2),
/// delta in {0, 1}.
cplx g_delta(cplx s, int delta);

/// (|t| / 2 pi)^{sigma - 1/2}: the Stirling prediction for |G_0(sigma + i t)|.
double g0_modulus_asymptotic(double sigma, double t);

}  // namespace twistzero
