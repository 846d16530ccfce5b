#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "twistzero/arith.hpp"
#include "twistzero/specfun.hpp"

namespace twistzero {

/// eta(m z)^e
struct EtaFactor {
  int m = 1;
  int e = 0;

  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

enum class SourceKind { EtaQuotient, ThetaTimesEta, CoefficientFile };

struct FormSpec {
  int weight2 = 0;  // twice the weight
  std::int64_t level = 1;
  SourceKind kind = SourceKind::EtaQuotient;
  std::vector<EtaFactor> eta;
  std::string path;
  std::string label;

  double nu() const { return weight2 / 2.0; }
  bool half_integral() const { return weight2 % 2 != 0; }
  /// k in weight k + 1/2 (half-integral) or the weight itself (integral).
  int k() const { return half_integral() ? (weight2 - 1) / 2 : weight2 / 2; }

  /// Throws InvalidForm on inconsistent metadata.
  void validate() const;
};

/// Parses `eta:m1^e1*m2^e2...`, `theta*eta:...` or `file:<path>`.
/// The level is derived from the eta/theta data unless overridden.
FormSpec parse_form(std::string_view text, std::optional<std::int64_t> level_override = std::nullopt);

/// Smallest level on which the eta(/theta) product is modular with trivial
/// character under our conventions.
std::int64_t natural_level(const std::vector<EtaFactor>& eta, bool with_theta);

/// Exponent of the leading q-power, sum m e / 24 (must be an integer >= 1).
std::int64_t eta_prefactor(const std::vector<EtaFactor>& eta);

/// Truncated power series in q with exact coefficients for exponents 0..M.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t truncation) : coeffs_(truncation + 1) {}

  std::size_t truncation() const { return coeffs_.size() - 1; }
  const mpz_class& operator[](std::size_t i) const { return coeffs_.at(i); }
  mpz_class& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }

  /// Product truncated at the smaller of the two truncations.
  PowerSeries operator*(const PowerSeries& other) const;

 private:
  std::vector<mpz_class> coeffs_;
};

/// theta(z) = sum_{n in Z} q^{n^2} up to q^M.
PowerSeries theta_coeffs(std::size_t M);

/// Exact coefficients c_0..c_M of prod eta(m z)^e, times theta(z) if requested.
/// Uses 128-bit integers and switches to GMP on overflow.
std::vector<mpz_class> eta_product_integers(const std::vector<EtaFactor>& eta, bool with_theta,
                                            std::size_t M);

struct CoeffTable {
  int weight2 = 0;
  std::int64_t level = 1;
  std::string label;
  std::vector<cplx> c;  // c[n-1] is the coefficient of e(nz)
  std::vector<cplx> a;  // a_n = c_n n^{-(nu-1)/2}

  std::size_t count() const { return c.size(); }
  double nu() const { return weight2 / 2.0; }
  bool is_real() const;
  /// max_n |a_n| over the table.
  double max_abs_a() const;
};

/// a_n = c_n n^{-(nu-1)/2}, nu = weight2 / 2.
std::vector<cplx> normalize(const std::vector<cplx>& c, int weight2);
/// Inverse of normalize.
std::vector<cplx> denormalize(const std::vector<cplx>& a, int weight2);

CoeffTable make_table(int weight2, std::int64_t level, std::string label, std::vector<cplx> c);

/// CoeffTable of an eta quotient or theta * eta quotient with M coefficients.
CoeffTable eta_quotient_coeffs(const FormSpec& spec, std::size_t M);

/// Builds the table for any source kind (file sources ignore M beyond checking).
CoeffTable build_table(const FormSpec& spec, std::size_t M);

/// sum_{n <= M} c_n e(nz) with a checked truncation bound.
cplx eval_form(const CoeffTable& table, cplx z, double tol = 1e-13);

/// |f(gamma z) - J(gamma, z) f(z)| / |f(gamma z)| for the weight-appropriate
/// automorphy factor (Shimura's factor for half-integral weight).
double verify_automorphy(const CoeffTable& table, const CuspMatrix& gamma, cplx z);

/// Automorphy factor J(gamma, z) for weight weight2 / 2.
cplx automorphy_factor(int weight2, const CuspMatrix& gamma, cplx z);

/// `# twistzero-coeffs v1 weight2=.. level=.. label=.. count=..` then `n re im`.
void write_coeffs(const CoeffTable& table, std::ostream& out);
void save_coeffs(const CoeffTable& table, const std::string& path);
CoeffTable load_coeffs(const std::string& path, std::optional<int> expected_weight2 = std::nullopt);

}  // namespace twistzero
