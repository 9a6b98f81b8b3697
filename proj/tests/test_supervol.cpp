#include <gtest/gtest.h>

#include <algorithm>

#include "skdv/quadrature.hpp"
#include "skdv/recursion.hpp"
#include "skdv/volume.hpp"

using namespace skdv;

namespace {

Rational pi2_coeff(const VolumePolynomial& v, int s2, const std::vector<int>& k, int w) {
  return v.coefficient(s2, k).coefficient(w ? FormalPolynomial::Exponents{w} : FormalPolynomial::Exponents{});
}

}  // namespace

TEST(Volume, OneOne) {
  VolumePolynomial v = volume_polynomial(1, 1, 2);
  EXPECT_EQ(pi2_coeff(v, 0, {0}, 0), Rational(1, 8));
  EXPECT_EQ(pi2_coeff(v, 1, {1}, 0), Rational(5, 96));
  EXPECT_EQ(pi2_coeff(v, 1, {0}, 1), Rational(5, 8));
  EXPECT_EQ(pi2_coeff(v, 2, {2}, 0), Rational(7, 1536));
  EXPECT_EQ(pi2_coeff(v, 2, {1}, 1), Rational(31, 96));
  EXPECT_EQ(pi2_coeff(v, 2, {0}, 2), Rational(337, 96));
  EXPECT_EQ(v.terms().size(), 6u);
}

TEST(Volume, GenusZero) {
  VolumePolynomial v3 = volume_polynomial(0, 3, 2);
  EXPECT_EQ(pi2_coeff(v3, 1, {0, 0, 0}, 0), Rational(1));
  EXPECT_EQ(pi2_coeff(v3, 2, {0, 1, 0}, 0), Rational(1, 4));
  EXPECT_EQ(pi2_coeff(v3, 2, {0, 0, 0}, 1), Rational(5));
  VolumePolynomial v4 = volume_polynomial(0, 4, 1);
  EXPECT_EQ(pi2_coeff(v4, 1, {0, 0, 0, 0}, 0), Rational(3));
  EXPECT_EQ(v4.terms().size(), 1u);
}

TEST(Volume, HigherGenus) {
  VolumePolynomial v21 = volume_polynomial(2, 1, 0);
  EXPECT_EQ(pi2_coeff(v21, 0, {1}, 0), Rational(3, 256));
  EXPECT_EQ(pi2_coeff(v21, 0, {0}, 1), Rational(9, 64));
  VolumePolynomial v12 = volume_polynomial(1, 2, 1);
  EXPECT_EQ(pi2_coeff(v12, 0, {0, 0}, 0), Rational(1, 8));
  EXPECT_EQ(pi2_coeff(v12, 1, {1, 0}, 0), Rational(5, 32));
  EXPECT_EQ(pi2_coeff(v12, 1, {0, 0}, 1), Rational(5, 2));
}

TEST(Volume, UnstableDiscAndCylinder) {
  VolumePolynomial v1 = volume_polynomial(0, 1, 2);
  EXPECT_EQ(pi2_coeff(v1, 1, {0}, 0), Rational(1, 2));
  EXPECT_EQ(pi2_coeff(v1, 2, {0}, 1), Rational(1, 4));
  EXPECT_EQ(pi2_coeff(v1, 2, {1}, 0), Rational(1, 48));
  VolumePolynomial v2 = volume_polynomial(0, 2, 1);
  EXPECT_EQ(pi2_coeff(v2, 1, {0, 0}, 0), Rational(1, 2));
}

TEST(Volume, SymmetricUnderRelabelling) {
  for (auto [g, n, s] : std::vector<std::tuple<int, int, int>>{{0, 4, 2}, {1, 2, 2}, {1, 3, 1}, {0, 5, 2}}) {
    VolumePolynomial v = volume_polynomial(g, n, s);
    for (const auto& [key, poly] : v.terms()) {
      std::vector<int> k = key.second;
      std::sort(k.begin(), k.end());
      do {
        EXPECT_EQ(v.coefficient(key.first, k), poly);
      } while (std::next_permutation(k.begin(), k.end()));
    }
  }
}

TEST(Volume, GradingOfEveryTerm) {
  VolumePolynomial v = volume_polynomial(1, 2, 3);
  for (const auto& [key, poly] : v.terms()) {
    int K = 0;
    for (int x : key.second) K += x;
    for (const auto& [e, c] : poly.terms()) {
      int w = e.empty() ? 0 : e[0];
      EXPECT_EQ(key.first, 1 - 1 + K + w);
    }
  }
}

TEST(Volume, TextAndJson) {
  VolumePolynomial v = volume_polynomial(1, 1, 1);
  EXPECT_EQ(v.str(), "V[1,1] = 1/8 + s^2*(5/8*pi2 + (5/96)*L1^2) + O(s^4)");
  auto j = v.to_json();
  EXPECT_EQ(j["g"], 1);
  EXPECT_EQ(j["terms"].size(), 3u);
  EXPECT_TRUE(j["terms"][0].contains("pi2"));
}

TEST(Volume, UnstableRejected) {
  EXPECT_THROW(volume_polynomial(0, 0, 1), std::invalid_argument);
  EXPECT_THROW(volume_polynomial(1, 0, 1), std::invalid_argument);
}

TEST(TranslatedCheck, SmallRegion) {
  TranslatedCheckReport r = translated_virasoro_check(Truncation{1, 4, 4, 4}, 3);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.entries.empty());
}

TEST(Kernels, ZerosAndSymmetry) {
  EXPECT_EQ(kernel_D(0, 2, 3), 0);
  EXPECT_EQ(kernel_D(1.5, 0, 0), 0);
  EXPECT_EQ(kernel_D(1.5, 0.5, 2), kernel_D(1.5, 2, 0.5));
  EXPECT_EQ(kernel_R(1.5, 0.7, 2), kernel_R(1.5, -0.7, 2));
}

TEST(Quadrature, XyMomentOfD) {
  const Real expect("125.0723042723958784480594747295");
  for (Scheme sch : {Scheme::TanhSinh, Scheme::GaussKronrod}) {
    Real v = d_moment(Real(1), 0, 0, {1e-12, sch});
    EXPECT_LT(abs(v - expect), Real("1e-25"));
  }
  Real closed = 2 * real_pi() * (2 * real_pi() * real_pi() + Real(1) / 6);
  EXPECT_LT(abs(expect - closed), Real("1e-29"));
}

TEST(Quadrature, NestedAgreesWithReduction) {
  Real a = d_moment(Real(1), 0, 0);
  Real b = d_moment_nested(Real(1), 0, 0);
  EXPECT_LT(abs(a - b), Real("1e-12"));
}

TEST(Quadrature, SchemesAgree) {
  for (int p = 0; p <= 7; ++p)
    for (const char* X : {"0.3", "2.5", "7"}) {
      Real a = line_moment(Real(X), p, {1e-12, Scheme::TanhSinh});
      Real b = line_moment(Real(X), p, {1e-12, Scheme::GaussKronrod});
      EXPECT_LT(abs(a - b), Real("1e-12") * (1 + abs(a))) << p << " " << X;
    }
}

TEST(Quadrature, ZeroAtZeroLength) {
  EXPECT_EQ(line_moment(Real(0), 3), 0);
  EXPECT_EQ(d_moment(Real(0), 1, 2), 0);
}

TEST(Quadrature, OddInX) {
  Real a = line_moment(Real("1.7"), 3), b = line_moment(Real("-1.7"), 3);
  EXPECT_LT(abs(a + b), Real("1e-30"));
}

TEST(Recursion, DefaultConventionPasses) {
  RecursionChecker checker(2);
  RecursionConvention conv;
  EXPECT_LT(checker.check(1, 1, {Real("1.3")}, conv).max_residual(), Real("1e-20"));
  EXPECT_LT(checker.check(0, 3, {Real("0.9"), Real("0.4"), Real("1.6")}, conv).max_residual(), Real("1e-20"));
  EXPECT_LT(checker.check(0, 1, {Real("2.2")}, conv).max_residual(), Real("1e-20"));
}

TEST(Recursion, DroppingUnstablePiecesFails) {
  RecursionChecker checker(2);
  RecursionConvention conv;
  conv.include_V01 = false;
  EXPECT_GT(checker.check(1, 1, {Real("1.3")}, conv).max_residual(), Real("1e-3"));
  conv = RecursionConvention{};
  conv.scale = KernelScale::Unit;
  EXPECT_GT(checker.check(0, 3, {Real("0.9"), Real("0.4"), Real("1.6")}, conv).max_residual(), Real("1e-3"));
}

TEST(Recursion, ConventionsEnumerated) {
  auto all = all_conventions();
  EXPECT_EQ(all.size(), 8u);
  EXPECT_EQ(all.front().str(), RecursionConvention{}.str());
}
