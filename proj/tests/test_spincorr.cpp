#include <gtest/gtest.h>

#include "skdv/spin.hpp"

using namespace skdv;

TEST(SpinUnstable, OnePoint) {
  EXPECT_EQ(spin_one_point(0), Rational(1, 2));
  for (int m = 0; m <= 5; ++m) {
    // 2^{-(m+1)} / ((m+1)(2m+1) m!)
    Rational expect = Rational(1) / (Rational(power_of_two(m + 1)) * Rational((m + 1) * (2 * m + 1)) *
                                     Rational(factorial(m)));
    EXPECT_EQ(spin_one_point(m), expect);
  }
  EXPECT_EQ(spin_one_point(1), Rational(1, 24));
}

TEST(SpinUnstable, TwoPoint) {
  EXPECT_EQ(spin_two_point(1, 0), Rational(1, 8));
  EXPECT_EQ(spin_two_point(0, 0), Rational(1, 2));
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) EXPECT_EQ(spin_two_point(a, b), spin_two_point(b, a));
}

TEST(Genus0, TrrSpotValues) {
  Genus0Trr trr;
  EXPECT_EQ(trr.correlator({0, 0, 0}), Rational(1));
  EXPECT_EQ(trr.correlator({1, 0, 0}), Rational(1, 2));
  EXPECT_EQ(trr.correlator({0, 0, 0, 2}), Rational(7, 8));
  EXPECT_THROW(trr.correlator({2}), std::invalid_argument);
}

TEST(Genus0, TrrMatchesClosedForm) {
  Genus0Trr trr;
  for (int n = 3; n <= 6; ++n)
    for_each_multiset_bounded(n, 5, 5, [&](const Multiset& m) {
      EXPECT_EQ(trr.correlator(m), genus0_closed_form(m));
    });
  EXPECT_EQ(genus0_closed_form({0}), spin_one_point(0));
  EXPECT_EQ(genus0_closed_form({3, 1}), spin_two_point(3, 1));
}

TEST(SpinOracle, StableValues) {
  SpinOracle s;
  EXPECT_EQ(s.correlator(1, {0}), Rational(1, 8));
  EXPECT_EQ(s.correlator(1, {1}), Rational(5, 48));
  EXPECT_EQ(s.correlator(1, {0, 1}), Rational(5, 16));
  EXPECT_EQ(s.correlator(2, {1}), Rational(3, 128));
  EXPECT_EQ(s.correlator(2, {0, 0}), Rational(0));
  EXPECT_EQ(s.correlator(0, {0, 0, 0, 2}), Rational(7, 8));
}

TEST(SpinOracle, AgreesWithBgwSolver) {
  SpinOracle s;
  CorrelatorSolver bgw(Model::gBGW);
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 3; ++n)
      for_each_multiset_bounded(n, 4, 5, [&](const Multiset& k) {
        EXPECT_EQ(s.correlator(g, k), bgw.correlator(g, k)) << g;
      });
}

TEST(TripleRoute, SmallTruncation) {
  ComparisonReport r = theorem1_compare(Truncation{1, 4, 3, 4});
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.nonzero, 20u);
  EXPECT_EQ(r.routes.size(), 3u);
}

TEST(TripleRoute, PerturbedRouteDetected) {
  Truncation t{1, 4, 3, 4};
  GradedSeries a = bgw_free_energy(t);
  GradedSeries b = assemble_z_omega(t);
  b.add(0, 1, Monomial::variable(0), Rational(1, 1000));
  ComparisonReport r = compare_series({"bgw", "omega"}, {a, b});
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.mismatches.size(), 1u);
}

TEST(DOperator, NormalisedAtZero) {
  Truncation t{2, 4, 3, 4};
  GradedSeries d = d_operator_apply(zk_free_energy(t, true));
  EXPECT_TRUE(d.constant_term().is_zero());
  EXPECT_EQ(d, bgw_free_energy(t));
}

TEST(DOperator, MissingVacuumDetected) {
  Truncation t{2, 4, 3, 4};
  EXPECT_THROW(d_operator_apply(zk_free_energy(t, false)), NormalizationMismatch);
}
