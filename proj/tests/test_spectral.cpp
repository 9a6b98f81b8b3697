#include <gtest/gtest.h>

#include "skdv/spectral.hpp"

using namespace skdv;

namespace {

FormalPolynomial s2(int k, const Rational& c) { return s2_power(k) * c; }

}  // namespace

TEST(Laurent, InverseOfUnitSeries) {
  // 1/(1 - s2 w) = sum s2^k w^k
  std::vector<FormalPolynomial> a = {s2(0, Rational(1)), s2(1, Rational(-1))};
  auto inv = invert_unit_series(a, 5);
  ASSERT_EQ(inv.size(), 6u);
  for (int i = 0; i <= 5; ++i) EXPECT_EQ(inv[static_cast<std::size_t>(i)], s2(i, Rational(1)));
}

TEST(Laurent, ProductAndWindow) {
  LaurentSeries a = LaurentSeries::monomial(-2, s2(0, Rational(1))) + LaurentSeries::monomial(1, s2(1, Rational(3)));
  LaurentSeries b = LaurentSeries::monomial(2, s2(0, Rational(2)));
  LaurentSeries p = a * b;
  EXPECT_EQ(p.coefficient(0), s2(0, Rational(2)));
  EXPECT_EQ(p.coefficient(3), s2(1, Rational(6)));
  EXPECT_TRUE(p.window(0, 2).coefficient(3).is_zero());
  EXPECT_EQ(a.reflected().coefficient(1), s2(1, Rational(-3)));
}

TEST(Airy, FirstCorrelators) {
  OddDifferentialTable t = tr_correlators(CurveKind::Airy, 1, 3);
  EXPECT_EQ(t.get(0, {0, 0, 0}).constant_term(), Rational(1));
  EXPECT_EQ(t.get(1, {1}).constant_term(), Rational(1, 24));
  EXPECT_EQ(TopologicalRecursion::kernel_sign(), 1);
}

TEST(Ck, OneOne) {
  OddDifferentialTable t = tr_correlators(CurveKind::CK, 1, 1);
  EXPECT_EQ(t.get(1, {0}), s2(0, Rational(1, 8)));
  EXPECT_EQ(t.get(1, {1}), s2(1, Rational(1, 24)));
  OddDifferentialTable eta = eta_reexpand(t, 1);
  EXPECT_EQ(eta.get(1, {0}), s2(0, Rational(1, 8)));
  EXPECT_EQ(eta.get(1, {1}), s2(1, Rational(5, 48)));
  EXPECT_EQ(eta.engine(), "tr-ck-eta");
}

TEST(Tables, AgreeWithIntersectionNumbers) {
  for (CurveKind kind : {CurveKind::Airy, CurveKind::Bessel, CurveKind::CK}) {
    OddDifferentialTable tr = tr_correlators(kind, 2, 3);
    TableComparison c = compare_to_tables(kind, tr, 2, 3);
    EXPECT_TRUE(c.ok()) << curve_name(kind);
    EXPECT_GT(c.nonzero, 0u);
  }
}

TEST(Tables, CkAtZeroIsBessel) {
  OddDifferentialTable ck = tr_correlators(CurveKind::CK, 2, 3);
  TableComparison c = compare_tables(at_s_zero(ck), tr_correlators(CurveKind::Bessel, 2, 3), "s=0");
  EXPECT_TRUE(c.ok());
  EXPECT_GT(c.nonzero, 0u);
}

TEST(Tables, EtaReexpansionIsSpin) {
  OddDifferentialTable ck = tr_correlators(CurveKind::CK, 2, 3);
  TableComparison c = compare_tables(eta_reexpand(ck, 4), spin_reference(2, 3, 4), "eta");
  EXPECT_TRUE(c.ok());
  EXPECT_GT(c.nonzero, 10u);
}

TEST(Tables, SymmetricAndStable) {
  for (CurveKind kind : {CurveKind::Airy, CurveKind::Bessel, CurveKind::CK, CurveKind::CNS}) {
    OddDifferentialTable t = tr_correlators(kind, 1, 3);
    EXPECT_TRUE(symmetry_violations(t).empty()) << curve_name(kind);
  }
  StabilityReport r = stability_check(CurveKind::CK, 1, 2, SpectralCurve::default_order(CurveKind::CK, 2));
  EXPECT_TRUE(r.comparison.ok());
}

TEST(Tables, PerturbationDetected) {
  OddDifferentialTable a = tr_correlators(CurveKind::Airy, 1, 2);
  OddDifferentialTable b = a;
  b.set(1, {1}, FormalPolynomial(Rational(1, 23), spectral_alphabet()));
  EXPECT_FALSE(compare_tables(a, b, "perturbed").ok());
}

TEST(Cns, LaplaceIdentity) {
  EXPECT_EQ(calibrate_laplace_sign(), -1);
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}}) {
    LaplaceReport r = cns_laplace_check(g, n, -1);
    EXPECT_TRUE(r.comparison.ok()) << g << "," << n;
  }
  EXPECT_FALSE(cns_laplace_check(1, 1, 1).comparison.ok());
}

TEST(Cns, LowOrderRejected) {
  EXPECT_THROW(tr_correlators(SpectralCurve::make(CurveKind::CNS, 1), 3, 1), InsufficientOrder);
  EXPECT_THROW(SpectralCurve::make(CurveKind::CK, 1), InsufficientOrder);
}

TEST(Cns, IndependentOfSufficientOrder) {
  auto a = tr_correlators(SpectralCurve::make(CurveKind::CNS, 1), 2, 1);
  auto b = tr_correlators(SpectralCurve::make(CurveKind::CNS, 12), 2, 1);
  EXPECT_EQ(a.entries(), b.entries());
  Alphabet ab = spectral_alphabet();
  EXPECT_EQ(b.get(2, {0}), FormalPolynomial::variable(ab, 1) * Rational(9, 64));
  EXPECT_EQ(b.get(2, {1}), FormalPolynomial(Rational(3, 128), ab));
}

TEST(Curves, NamesRoundTrip) {
  for (CurveKind k : {CurveKind::Airy, CurveKind::Bessel, CurveKind::CK, CurveKind::CNS})
    EXPECT_EQ(parse_curve(curve_name(k)), k);
  EXPECT_THROW(parse_curve("hyperbolic"), std::invalid_argument);
  EXPECT_THROW(reference_table(CurveKind::CNS, 1, 1), std::invalid_argument);
}

TEST(Tables, JsonEngineTags) {
  EXPECT_EQ(tr_correlators(CurveKind::Bessel, 1, 1).to_json()["engine"], "tr-bessel");
  EXPECT_NE(tr_correlators(CurveKind::Airy, 0, 3).to_csv().find("0;0;0"), std::string::npos);
}
