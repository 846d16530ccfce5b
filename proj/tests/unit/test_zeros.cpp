#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "twistzero/error.hpp"
#include "twistzero/zeros.hpp"

using namespace twistzero;

namespace {

ZFunction plain(double (*f)(double)) {
  return [f](double t) { return ZSample{f(t), 0.0, 0.0, std::abs(f(t))}; };
}

const TwistedL& delta_15() {
  static const TwistedL l(
      std::make_shared<const CoeffTable>(
          eta_quotient_coeffs(parse_form("eta:1^24"), TwistedL::coefficients_needed(12.0, 5, 41.0, 1e-12))),
      {1, 5});
  return l;
}

}  // namespace

TEST(Scan, SineBrackets) {
  const ScanResult r = scan(plain([](double t) { return std::sin(t); }), 0.0, 10.0, 0.5);
  ASSERT_EQ(r.brackets.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const double root = kPi * static_cast<double>(i + 1);
    EXPECT_LT(r.brackets[i].t_lo, root);
    EXPECT_GT(r.brackets[i].t_hi, root);
    EXPECT_LT(r.brackets[i].z_lo * r.brackets[i].z_hi, 0.0);
  }
  ASSERT_EQ(r.skipped.size(), 1u);  // the exact zero at t = 0
  EXPECT_EQ(r.skipped[0], 0.0);
}

TEST(Scan, PositiveFunctionAndErrors) {
  EXPECT_TRUE(scan(plain([](double t) { return 1.0 + t * t; }), -5.0, 5.0, 0.1).brackets.empty());
  EXPECT_THROW(scan(plain([](double t) { return t; }), 0.0, 1.0, 0.0), Error);
  EXPECT_TRUE(scan(plain([](double t) { return t; }), 1.0, 0.0, 0.1).brackets.empty());
  const ZFunction complexish = [](double t) { return ZSample{std::cos(t), 0.5, 1e-12, 1.0}; };
  try {
    scan(complexish, 0.0, 1.0, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RealnessViolation);
    EXPECT_NE(std::string(e.what()).find("t = 0"), std::string::npos) << e.what();
  }
}

TEST(Refine, SineAndLinear) {
  const ZFunction s = plain([](double t) { return std::sin(t); });
  const RefinedZero z = refine(s, {3.0, 3.5, std::sin(3.0), std::sin(3.5)}, 1e-10);
  EXPECT_NEAR(z.t, kPi, 1e-10);
  EXPECT_LE(z.width, 1e-10);
  const RefinedZero lin = refine(plain([](double t) { return t - 2.0; }), {1.0, 3.0, -1.0, 1.0}, 1e-12);
  EXPECT_NEAR(lin.t, 2.0, 1e-12);
}

TEST(Refine, IterationCount) {
  const ZFunction s = plain([](double t) { return std::sin(t); });
  for (double tol : {1e-3, 1e-6, 1e-9, 3e-11}) {
    const Bracket b{3.0, 3.5, std::sin(3.0), std::sin(3.5)};
    const RefinedZero z = refine(s, b, tol);
    EXPECT_EQ(z.iterations, static_cast<int>(std::ceil(std::log2(0.5 / tol)))) << tol;
    EXPECT_NEAR(z.width, 0.5 / std::pow(2.0, z.iterations), 1e-15);
    // final bracket still straddles the zero
    EXPECT_LT(std::sin(z.t - z.width / 2.0) * std::sin(z.t + z.width / 2.0), 0.0);
  }
}

TEST(Refine, LostBracket) {
  // the error estimate swamps the value everywhere inside the bracket
  const ZFunction noisy = [](double t) { return ZSample{t - 2.0, 0.0, std::abs(t - 2.0) < 0.9 ? 1.0 : 0.0, 0.0}; };
  try {
    refine(noisy, {1.0, 3.2, -1.0, 1.2}, 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LostBracket);
  }
  const ZeroReport r = find_zeros(noisy, 0.6, 3.6, 1.0, 1e-6);
  EXPECT_EQ(r.brackets.size(), 1u);
  EXPECT_TRUE(r.zeros.empty());
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(CountZeros, Examples) {
  EXPECT_EQ(count_zeros(ZeroReport{}).count, 0u);
  const ZeroReport r = find_zeros(plain([](double t) { return std::sin(t); }), 0.0, 10.0, 0.5, 1e-10);
  const ZeroCount c = count_zeros(r);
  EXPECT_EQ(c.count, 3u);
  EXPECT_EQ(c.density.at(3), 1u);
  EXPECT_EQ(c.density.at(6), 1u);
  EXPECT_EQ(c.density.at(9), 1u);
}

TEST(DeltaZeros, WindowAndRefinement) {
  const TwistedL& l = delta_15();
  const ZFunction z = critical_z(l);
  const ZeroReport r = find_zeros(z, 0.0, 40.0, 0.05, 1e-8);
  ASSERT_GE(r.brackets.size(), 1u);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(count_zeros(r).count, r.brackets.size());
  ASSERT_EQ(r.zeros.size(), r.brackets.size());
  for (std::size_t i = 0; i < r.zeros.size(); ++i) {
    const RefinedZero& zz = r.zeros[i];
    EXPECT_GE(zz.t, r.brackets[i].t_lo);
    EXPECT_LE(zz.t, r.brackets[i].t_hi);
    EXPECT_LE(zz.abs_L, 1e-6) << zz.t;
    EXPECT_LT(z(zz.t - zz.width / 2.0).value * z(zz.t + zz.width / 2.0).value, 0.0) << zz.t;
  }
  // the first zero again with a table twice as long
  const TwistedL twice(std::make_shared<const CoeffTable>(
                           eta_quotient_coeffs(parse_form("eta:1^24"), 2 * l.table().count())),
                       {1, 5});
  const RefinedZero again = refine(critical_z(twice), r.brackets.front(), 1e-8);
  EXPECT_NEAR(again.t, r.zeros.front().t, 2e-8);
  EXPECT_LE(std::abs(twice.smoothed_L(cplx(0.5, again.t)).value), 1e-6);
}

TEST(DeltaZeros, HalvedStepFindsSuperset) {
  const ZFunction z = critical_z(delta_15());
  const ScanResult coarse = scan(z, 0.0, 40.0, 0.1);
  const ScanResult fine = scan(z, 0.0, 40.0, 0.05);
  ASSERT_GE(fine.brackets.size(), coarse.brackets.size());
  for (const Bracket& b : coarse.brackets) {
    bool found = false;
    for (const Bracket& f : fine.brackets) found = found || (f.t_lo >= b.t_lo - 1e-12 && f.t_hi <= b.t_hi + 1e-12);
    EXPECT_TRUE(found) << b.t_lo;
  }
}

TEST(HalfIntegralZeros, BundledExample) {
  const TwistedL g(std::make_shared<const CoeffTable>(eta_quotient_coeffs(
                       parse_form("theta*eta:4^6"), TwistedL::coefficients_needed(3.5, 16, 31.0, 1e-12))),
                   {1, 16});
  const ZeroReport r = find_zeros(critical_z(g), 0.0, 30.0, 0.05, 1e-8);
  EXPECT_GE(r.zeros.size(), 1u);
  EXPECT_TRUE(r.warnings.empty());
  for (const auto& zz : r.zeros) EXPECT_LE(zz.abs_L, 1e-6) << zz.t;
}
