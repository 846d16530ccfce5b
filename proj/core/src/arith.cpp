#include "twistzero/arith.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "twistzero/error.hpp"

namespace twistzero {
namespace {

// Jacobi symbol (a/n) for odd n > 0.
int jacobi_positive(std::int64_t a, std::int64_t n) {
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

ReducedRational reduce(std::int64_t p, std::int64_t q) {
  if (q == 0) throw Error(ErrorCode::ZeroDenominator, "denominator is zero");
  if (p == 0) return {0, 1};
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  return {p, q};
}

std::int64_t mod_inverse(std::int64_t p, std::int64_t q) {
  if (q <= 0) throw Error(ErrorCode::InvalidArgument, "modulus must be positive");
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorCode::NotCoprime,
                "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  if (q == 1) return 0;
  std::int64_t old_r = floor_mod(p, q);
  std::int64_t r = q;
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  return floor_mod(old_s, q);
}

bool is_self_inverse(std::int64_t p, std::int64_t q) {
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorCode::NotCoprime,
                "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  const std::int64_t r = floor_mod(p, q);
  return floor_mod(r * r, q) == floor_mod(1, q);
}

bool is_equiv_infinity(const ReducedRational& cusp, std::int64_t level) {
  return level > 0 && cusp.q % level == 0;
}

std::optional<CuspMatrix> cusp_matrix(const ReducedRational& cusp, std::int64_t level) {
  if (!is_equiv_infinity(cusp, level)) return std::nullopt;
  const std::int64_t pt = mod_inverse(cusp.p, cusp.q);
  return CuspMatrix{cusp.p, (cusp.p * pt - 1) / cusp.q, cusp.q, pt};
}

int jacobi_extended(std::int64_t c, std::int64_t d) {
  if (d % 2 == 0) {
    throw Error(ErrorCode::EvenDenominator, "Jacobi symbol needs odd d, got " + std::to_string(d));
  }
  if (c == 0) return (d == 1 || d == -1) ? 1 : 0;
  if (d > 0) return jacobi_positive(c, d);
  const int base = jacobi_positive(c, -d);
  return c < 0 ? -base : base;
}

cplx epsilon_d(std::int64_t d) {
  if (d % 2 == 0) throw Error(ErrorCode::EvenInput, "epsilon_d needs odd d");
  return floor_mod(d, 4) == 1 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
}

int hilbert_real(double x, double y) {
  if (x == 0.0 || y == 0.0) throw Error(ErrorCode::ZeroArgument, "Hilbert symbol of zero");
  return (x < 0.0 && y < 0.0) ? -1 : 1;
}

namespace {

cplx i_power(std::int64_t e) {
  switch (floor_mod(e, 4)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

cplx beta_pq(std::int64_t p, std::int64_t q, int k) {
  if (p % 2 == 0) throw Error(ErrorCode::EvenP, "beta_{p/q} needs odd p");
  if (std::gcd(p, q) != 1) {
    throw Error(ErrorCode::NotCoprime,
                "gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  const int symbol = jacobi_extended(-q, p);
  // (c/d)^{2k+1} = (c/d) for a unit symbol; eps_p^{-1-2k} = i^{(-1-2k)} or 1.
  const cplx eps_power = floor_mod(p, 4) == 1 ? cplx(1.0, 0.0) : i_power(-1 - 2 * static_cast<std::int64_t>(k));
  return static_cast<double>(symbol) * eps_power;
}

std::vector<cplx> root_of_unity_table(const ReducedRational& cusp) {
  std::vector<cplx> table(static_cast<std::size_t>(cusp.q));
  for (std::int64_t r = 0; r < cusp.q; ++r) {
    // Exact residue of r p mod q, then the angle in [0, 2 pi).
    const std::int64_t num = floor_mod(r * floor_mod(cusp.p, cusp.q) % cusp.q, cusp.q);
    const std::int64_t g = std::gcd(num, cusp.q);
    const std::int64_t a = num / g;
    const std::int64_t b = cusp.q / g;
    cplx value;
    if (a == 0) {
      value = {1.0, 0.0};
    } else if (b == 2) {
      value = {-1.0, 0.0};
    } else if (b == 4) {
      value = a == 1 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
    } else {
      const double angle = kTwoPi * static_cast<double>(a) / static_cast<double>(b);
      value = {std::cos(angle), std::sin(angle)};
    }
    table[static_cast<std::size_t>(r)] = value;
  }
  return table;
}

Twist::Twist(ReducedRational cusp, std::int64_t level)
    : cusp_(reduce(cusp.p, cusp.q)), level_(level), p_tilde_(mod_inverse(cusp_.p, cusp_.q)) {
  if (level <= 0) throw Error(ErrorCode::InvalidArgument, "level must be positive");
  unit_roots_ = root_of_unity_table(cusp_);
}

Twist Twist::reflected() const { return Twist(reduce(-p_tilde_, cusp_.q), level_); }

}  // namespace twistzero
