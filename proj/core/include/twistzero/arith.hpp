#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twistzero/specfun.hpp"

namespace twistzero {

/// p/q in lowest terms with q > 0.
struct ReducedRational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  friend bool operator==(const ReducedRational&, const ReducedRational&) = default;
};

/// Integer matrix (a b; c d) with ad - bc = 1.
struct CuspMatrix {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 1;

  std::int64_t det() const { return a * d - b * c; }
  cplx act(cplx z) const {
    return (static_cast<double>(a) * z + static_cast<double>(b)) /
           (static_cast<double>(c) * z + static_cast<double>(d));
  }
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);

ReducedRational reduce(std::int64_t p, std::int64_t q);

/// Inverse of p modulo q in [0, q). For q = 1 this is 0.
std::int64_t mod_inverse(std::int64_t p, std::int64_t q);

bool is_self_inverse(std::int64_t p, std::int64_t q);

/// True iff the cusp is Gamma_0(N)-equivalent to infinity, i.e. N | q.
bool is_equiv_infinity(const ReducedRational& cusp, std::int64_t level);

/// gamma = (p r; q p~) with r = (p p~ - 1)/q, so gamma(inf) = p/q.
/// Empty when the cusp is not equivalent to infinity.
std::optional<CuspMatrix> cusp_matrix(const ReducedRational& cusp, std::int64_t level);

/// Shimura's extension of the Jacobi symbol (c/d) for odd d.
int jacobi_extended(std::int64_t c, std::int64_t d);

/// 1 for d = 1 mod 4, i for d = 3 mod 4.
cplx epsilon_d(std::int64_t d);

/// Real Hilbert symbol: -1 iff both arguments are negative.
int hilbert_real(double x, double y);

/// ((-q/p))^{2k+1} eps_p^{-1-2k}.
cplx beta_pq(std::int64_t p, std::int64_t q, int k);

/// A reduced cusp p/q together with the data needed to twist by e(np/q).
class Twist {
 public:
  Twist(ReducedRational cusp, std::int64_t level);

  const ReducedRational& cusp() const { return cusp_; }
  std::int64_t p() const { return cusp_.p; }
  std::int64_t q() const { return cusp_.q; }
  std::int64_t level() const { return level_; }
  std::int64_t p_tilde() const { return p_tilde_; }

  /// e(np/q); the table is indexed by n mod q.
  cplx root(std::int64_t n) const {
    const std::int64_t r = n % cusp_.q;
    return unit_roots_[static_cast<std::size_t>(r < 0 ? r + cusp_.q : r)];
  }
  const std::vector<cplx>& unit_roots() const { return unit_roots_; }

  /// The paired cusp -p~/q.
  Twist reflected() const;

 private:
  ReducedRational cusp_;
  std::int64_t level_;
  std::int64_t p_tilde_;
  std::vector<cplx> unit_roots_;
};

/// table[r] = e(rp/q), r = 0..q-1, with the angle reduced exactly mod q.
std::vector<cplx> root_of_unity_table(const ReducedRational& cusp);

}  // namespace twistzero
