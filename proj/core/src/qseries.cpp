#include "twistzero/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "twistzero/error.hpp"

namespace twistzero {
namespace {

using Sparse = std::vector<std::pair<std::size_t, int>>;

// prod_{n >= 1} (1 - q^{mn}) by Euler's pentagonal theorem.
Sparse euler_sparse(int m, std::size_t L) {
  Sparse out{{0, 1}};
  for (std::int64_t j = 1;; ++j) {
    const auto g1 = static_cast<std::size_t>(m) * static_cast<std::size_t>(j * (3 * j - 1) / 2);
    const auto g2 = static_cast<std::size_t>(m) * static_cast<std::size_t>(j * (3 * j + 1) / 2);
    if (g1 > L) break;
    const int sign = (j % 2 == 0) ? 1 : -1;
    out.emplace_back(g1, sign);
    if (g2 <= L) out.emplace_back(g2, sign);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// prod_{n >= 1} (1 - q^{mn})^3 by Jacobi's identity.
Sparse euler_cube_sparse(int m, std::size_t L) {
  Sparse out;
  for (std::int64_t n = 0;; ++n) {
    const auto e = static_cast<std::size_t>(m) * static_cast<std::size_t>(n * (n + 1) / 2);
    if (e > L) break;
    out.emplace_back(e, static_cast<int>(((n % 2 == 0) ? 1 : -1) * (2 * n + 1)));
  }
  return out;
}

Sparse theta_sparse(std::size_t L) {
  Sparse out{{0, 1}};
  for (std::size_t n = 1; n * n <= L; ++n) out.emplace_back(n * n, 2);
  return out;
}

struct OverflowSignal {};

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowSignal{};
  return r;
}
inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowSignal{};
  return r;
}

inline void mul_add(i128& acc, int s, const i128& x) { acc = checked_add(acc, checked_mul(s, x)); }
inline void mul_add(mpz_class& acc, int s, const mpz_class& x) { acc += s * x; }
inline void mul_sub(i128& acc, int s, const i128& x) { acc = checked_add(acc, checked_mul(-s, x)); }
inline void mul_sub(mpz_class& acc, int s, const mpz_class& x) { acc -= s * x; }

// A <- A * S in place (S[0] = (0, 1)).
template <class Int>
void multiply_sparse(std::vector<Int>& A, const Sparse& S) {
  for (std::size_t n = A.size(); n-- > 0;) {
    Int acc = A[n];
    for (std::size_t k = 1; k < S.size() && S[k].first <= n; ++k) {
      mul_add(acc, S[k].second, A[n - S[k].first]);
    }
    A[n] = acc;
  }
}

// A <- A / S in place (S[0] = (0, 1)).
template <class Int>
void divide_sparse(std::vector<Int>& A, const Sparse& S) {
  for (std::size_t n = 0; n < A.size(); ++n) {
    Int acc = A[n];
    for (std::size_t k = 1; k < S.size() && S[k].first <= n; ++k) {
      mul_sub(acc, S[k].second, A[n - S[k].first]);
    }
    A[n] = acc;
  }
}

template <class Int>
std::vector<Int> eta_engine(const std::vector<EtaFactor>& eta, bool with_theta, std::size_t L) {
  std::vector<Int> A(L + 1, Int(0));
  A[0] = Int(1);
  for (const auto& f : eta) {
    const int mag = std::abs(f.e);
    const Sparse cube = euler_cube_sparse(f.m, L);
    const Sparse single = euler_sparse(f.m, L);
    for (int r = 0; r < mag / 3; ++r) {
      if (f.e > 0) multiply_sparse(A, cube); else divide_sparse(A, cube);
    }
    for (int r = 0; r < mag % 3; ++r) {
      if (f.e > 0) multiply_sparse(A, single); else divide_sparse(A, single);
    }
  }
  if (with_theta) multiply_sparse(A, theta_sparse(L));
  return A;
}

mpz_class to_mpz(i128 x) {
  const bool neg = x < 0;
  u128 u = neg ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& s, std::string_view context) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidForm, "cannot read integer '" + s + "' in " + std::string(context));
  }
}

std::vector<EtaFactor> parse_eta_list(const std::string& body) {
  std::vector<EtaFactor> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto star = body.find('*', start);
    const std::string item = trim(body.substr(start, star == std::string::npos ? std::string::npos : star - start));
    if (item.empty()) throw Error(ErrorCode::InvalidForm, "empty eta factor in '" + body + "'");
    const auto caret = item.find('^');
    EtaFactor f;
    f.m = parse_int(trim(item.substr(0, caret)), "eta factor");
    f.e = caret == std::string::npos ? 1 : parse_int(trim(item.substr(caret + 1)), "eta exponent");
    if (f.m < 1) throw Error(ErrorCode::InvalidForm, "eta scale must be positive");
    if (f.e == 0) throw Error(ErrorCode::InvalidForm, "eta exponent must be nonzero");
    out.push_back(f);
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return out;
}

}  // namespace

void FormSpec::validate() const {
  if (level < 1) throw Error(ErrorCode::InvalidForm, "level must be positive");
  if (weight2 <= 0) throw Error(ErrorCode::InvalidForm, "weight must be positive");
  if (half_integral() && level % 4 != 0) {
    throw Error(ErrorCode::InvalidForm,
                "half-integral weight needs a level divisible by 4, got " + std::to_string(level));
  }
  if (kind != SourceKind::CoefficientFile) {
    int sum = kind == SourceKind::ThetaTimesEta ? 1 : 0;
    for (const auto& f : eta) sum += f.e;
    if (sum != weight2) throw Error(ErrorCode::InvalidForm, "weight does not match the eta exponents");
    if (eta_prefactor(eta) < 0) throw Error(ErrorCode::NonIntegralPrefactor, "negative leading q-power");
  }
}

std::int64_t eta_prefactor(const std::vector<EtaFactor>& eta) {
  std::int64_t s = 0;
  for (const auto& f : eta) s += static_cast<std::int64_t>(f.m) * f.e;
  if (s % 24 != 0) {
    throw Error(ErrorCode::NonIntegralPrefactor, "sum m e / 24 = " + std::to_string(s) + "/24 is not an integer");
  }
  return s / 24;
}

std::int64_t natural_level(const std::vector<EtaFactor>& eta, bool with_theta) {
  std::int64_t base = with_theta ? 4 : 1;
  for (const auto& f : eta) base = std::lcm(base, static_cast<std::int64_t>(f.m));
  for (std::int64_t j = 1; j <= 24; ++j) {
    const std::int64_t N = base * j;
    if (with_theta && N % 4 != 0) continue;
    std::int64_t s = 0;
    for (const auto& f : eta) s += (N / f.m) * f.e;
    if (s % 24 == 0) return N;
  }
  return base;
}

FormSpec parse_form(std::string_view text, std::optional<std::int64_t> level_override) {
  const std::string spec = trim(text);
  FormSpec out;
  out.label = spec;
  if (spec.rfind("file:", 0) == 0) {
    out.kind = SourceKind::CoefficientFile;
    out.path = spec.substr(5);
    if (out.path.empty()) throw Error(ErrorCode::InvalidForm, "file source needs a path");
    return out;  // weight and level come from the file header
  }
  std::string body;
  if (spec.rfind("theta*eta:", 0) == 0) {
    out.kind = SourceKind::ThetaTimesEta;
    body = spec.substr(10);
  } else if (spec.rfind("eta:", 0) == 0) {
    out.kind = SourceKind::EtaQuotient;
    body = spec.substr(4);
  } else {
    throw Error(ErrorCode::InvalidForm,
                "unrecognized form '" + spec + "' (expected eta:..., theta*eta:... or file:...)");
  }
  out.eta = parse_eta_list(body);
  const bool theta = out.kind == SourceKind::ThetaTimesEta;
  out.weight2 = theta ? 1 : 0;
  for (const auto& f : out.eta) out.weight2 += f.e;
  out.level = level_override ? *level_override : natural_level(out.eta, theta);
  out.validate();
  return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& other) const {
  const std::size_t M = std::min(truncation(), other.truncation());
  PowerSeries out(M);
  for (std::size_t i = 0; i <= M; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= M; ++j) out.coeffs_[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return out;
}

PowerSeries theta_coeffs(std::size_t M) {
  PowerSeries out(M);
  out[0] = 1;
  for (std::size_t n = 1; n * n <= M; ++n) out[n * n] = 2;
  return out;
}

std::vector<mpz_class> eta_product_integers(const std::vector<EtaFactor>& eta, bool with_theta,
                                            std::size_t M) {
  const std::int64_t shift = eta_prefactor(eta);
  if (shift < 0) {
    throw Error(ErrorCode::NonIntegralPrefactor, "negative leading exponent " + std::to_string(shift));
  }
  std::vector<mpz_class> out(M + 1, mpz_class(0));
  if (static_cast<std::size_t>(shift) > M) return out;
  const std::size_t L = M - static_cast<std::size_t>(shift);
  try {
    const auto fast = eta_engine<i128>(eta, with_theta, L);
    for (std::size_t j = 0; j <= L; ++j) out[j + static_cast<std::size_t>(shift)] = to_mpz(fast[j]);
  } catch (const OverflowSignal&) {
    const auto exact = eta_engine<mpz_class>(eta, with_theta, L);
    for (std::size_t j = 0; j <= L; ++j) out[j + static_cast<std::size_t>(shift)] = exact[j];
  }
  return out;
}

bool CoeffTable::is_real() const {
  return std::all_of(c.begin(), c.end(), [](const cplx& v) { return v.imag() == 0.0; });
}

double CoeffTable::max_abs_a() const {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

std::vector<cplx> normalize(const std::vector<cplx>& c, int weight2) {
  const double expo = -(weight2 / 2.0 - 1.0) / 2.0;
  std::vector<cplx> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = c[i] * std::pow(static_cast<double>(i + 1), expo);
  return a;
}

std::vector<cplx> denormalize(const std::vector<cplx>& a, int weight2) {
  const double expo = (weight2 / 2.0 - 1.0) / 2.0;
  std::vector<cplx> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * std::pow(static_cast<double>(i + 1), expo);
  return c;
}

CoeffTable make_table(int weight2, std::int64_t level, std::string label, std::vector<cplx> c) {
  CoeffTable t;
  t.weight2 = weight2;
  t.level = level;
  t.label = std::move(label);
  t.a = normalize(c, weight2);
  t.c = std::move(c);
  return t;
}

CoeffTable eta_quotient_coeffs(const FormSpec& spec, std::size_t M) {
  if (spec.kind == SourceKind::CoefficientFile) {
    throw Error(ErrorCode::InvalidForm, "eta_quotient_coeffs needs an eta or theta*eta source");
  }
  if (eta_prefactor(spec.eta) < 1) {
    throw Error(ErrorCode::NonIntegralPrefactor, "expansion must start at q^1 for a cusp form");
  }
  const auto ints = eta_product_integers(spec.eta, spec.kind == SourceKind::ThetaTimesEta, M);
  std::vector<cplx> c(M);
  for (std::size_t n = 1; n <= M; ++n) c[n - 1] = ints[n].get_d();
  return make_table(spec.weight2, spec.level, spec.label, std::move(c));
}

CoeffTable build_table(const FormSpec& spec, std::size_t M) {
  if (spec.kind == SourceKind::CoefficientFile) {
    CoeffTable t = load_coeffs(spec.path, spec.weight2 > 0 ? std::optional<int>(spec.weight2) : std::nullopt);
    if (t.weight2 % 2 != 0 && t.level % 4 != 0) {
      throw Error(ErrorCode::InvalidForm, "half-integral weight needs a level divisible by 4");
    }
    return t;
  }
  return eta_quotient_coeffs(spec, M);
}

cplx eval_form(const CoeffTable& table, cplx z, double tol) {
  const double y = z.imag();
  if (!(y > 0.0)) throw Error(ErrorCode::InvalidArgument, "eval_form needs Im z > 0");
  const std::size_t M = table.count();
  const double nu = table.nu();
  const cplx twopi_i(0.0, kTwoPi);
  cplx sum = 0.0;
  double log_c = -1e300;  // log max |c_n| / n^nu
  for (std::size_t n = 1; n <= M; ++n) {
    const double mag = std::abs(table.c[n - 1]);
    if (mag > 0.0) log_c = std::max(log_c, std::log(mag) - nu * std::log(static_cast<double>(n)));
    if (kTwoPi * static_cast<double>(n) * y > 750.0 + nu * std::log(static_cast<double>(n))) continue;
    if (mag == 0.0) continue;
    sum += table.c[n - 1] * std::exp(twopi_i * static_cast<double>(n) * z);
  }
  const double m1 = static_cast<double>(M) + 1.0;
  const double log_ratio = nu * std::log((m1 + 1.0) / m1) - kTwoPi * y;
  if (log_ratio >= 0.0) {
    throw Error(ErrorCode::InsufficientTruncation, "Im z too small for " + std::to_string(M) + " coefficients");
  }
  const double log_tail = log_c + nu * std::log(m1) - kTwoPi * m1 * y - std::log1p(-std::exp(log_ratio));
  const double scale = std::abs(sum);
  if (!(std::exp(log_tail) <= tol * scale)) {
    throw Error(ErrorCode::InsufficientTruncation,
                "truncation bound " + std::to_string(std::exp(log_tail)) + " exceeds tolerance at Im z = " +
                    std::to_string(y) + " with " + std::to_string(M) + " coefficients");
  }
  return sum;
}

namespace {

cplx int_power(cplx base, int e) {
  cplx r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

cplx automorphy_factor(int weight2, const CuspMatrix& gamma, cplx z) {
  const cplx j = static_cast<double>(gamma.c) * z + static_cast<double>(gamma.d);
  if (weight2 % 2 == 0) return int_power(j, weight2 / 2);
  const int k = (weight2 - 1) / 2;
  const int symbol = jacobi_extended(gamma.c, gamma.d);  // odd power of +-1
  // eps_d^{-1-2k}: eps_d is 1 or i, and i^{-1-2k} = i^{(3 + 2k) mod 4}.
  const cplx eps_power = epsilon_d(gamma.d) == cplx(1.0, 0.0) ? cplx(1.0, 0.0) : int_power(cplx(0.0, 1.0), (3 + 2 * k) % 4);
  return static_cast<double>(symbol) * eps_power * int_power(std::sqrt(j), 2 * k + 1);
}

double verify_automorphy(const CoeffTable& table, const CuspMatrix& gamma, cplx z) {
  if (gamma.det() != 1) throw Error(ErrorCode::InvalidArgument, "matrix determinant is not 1");
  if (gamma.c % table.level != 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix is not in Gamma_0(" + std::to_string(table.level) + ")");
  }
  const cplx lhs = eval_form(table, gamma.act(z));
  const cplx rhs = automorphy_factor(table.weight2, gamma, z) * eval_form(table, z);
  return std::abs(lhs - rhs) / std::abs(lhs);
}

}  // namespace twistzero
