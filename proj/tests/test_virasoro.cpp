#include <gtest/gtest.h>

#include "skdv/spin.hpp"
#include "skdv/virasoro.hpp"

using namespace skdv;

TEST(KwSolver, ReferenceValues) {
  CorrelatorSolver s(Model::KW);
  EXPECT_EQ(s.correlator(0, {0, 0, 0}), Rational(1));
  EXPECT_EQ(s.correlator(1, {1}), Rational(1, 24));
  EXPECT_EQ(s.correlator(0, {0, 0, 0, 1}), Rational(1));
  EXPECT_EQ(s.correlator(1, {0, 2}), Rational(1, 24));
  EXPECT_EQ(s.correlator(2, {4}), Rational(1, 1152));
  EXPECT_EQ(s.correlator(2, {2, 3}), Rational(29, 5760));
  EXPECT_EQ(s.correlator(3, {7}), Rational(1, 82944));
}

TEST(KwSolver, DimensionConstraint) {
  Truncation t{2, 6, 4, 0};
  CorrelatorTable table = kw_correlators(t);
  for (const auto& [key, v] : table.entries()) {
    int n = static_cast<int>(key.second.size());
    if (!v.is_zero()) EXPECT_EQ(total(key.second), 3 * key.first - 3 + n);
  }
}

TEST(KwSolver, DilatonEquation) {
  CorrelatorSolver s(Model::KW);
  // <tau_1 tau_k>_g = (2g-2+n) <tau_k>_g
  for (auto [g, k] : std::vector<std::pair<int, Multiset>>{{1, {1}}, {2, {4}}, {2, {2, 3}}, {0, {0, 0, 0}}}) {
    Multiset with1 = k;
    with1.push_back(1);
    int n = static_cast<int>(k.size());
    EXPECT_EQ(s.correlator(g, with1), Rational(2 * g - 2 + n) * s.correlator(g, k));
  }
}

TEST(Solvers, EveryInsertionAgrees) {
  Truncation t{2, 6, 4, 6};
  EXPECT_NO_THROW(kw_correlators(t, true));
  EXPECT_NO_THROW(bgw_correlators(t, true));
}

TEST(BgwSolver, ThetaOnePointGenusOne) {
  CorrelatorSolver s(Model::gBGW);
  EXPECT_EQ(s.correlator(1, {0}), Rational(1, 8));
  EXPECT_EQ(s.correlator(1, {1}), Rational(5, 48));
  EXPECT_EQ(s.correlator(0, {0}), Rational(1, 2));
  EXPECT_EQ(s.correlator(0, {1, 0}), Rational(1, 8));
  EXPECT_EQ(s.correlator(0, {1, 0, 0}), Rational(1, 2));
}

TEST(BgwSolver, OnePointFamily) {
  CorrelatorSolver s(Model::gBGW);
  for (int m = 0; m <= 5; ++m) EXPECT_EQ(s.correlator(0, {m}), spin_one_point(m)) << m;
}

TEST(Constraints, ResidualsVanish) {
  Truncation t{2, 6, 5, 6};
  GradedSeries kw = kw_free_energy(t), bgw = bgw_free_energy(t);
  for (int m = -1; m <= 4; ++m) EXPECT_TRUE(apply_virasoro_oracle(kw, VirasoroSpec::kw(), m).is_zero()) << m;
  for (int m = 0; m <= 4; ++m)
    EXPECT_TRUE(apply_virasoro_oracle(bgw, VirasoroSpec::gbgw(), m).is_zero()) << m;
  EXPECT_THROW(apply_virasoro_oracle(bgw, VirasoroSpec::gbgw(), -1), std::out_of_range);
}

TEST(Constraints, PerturbedTableDetected) {
  Truncation t{2, 6, 5, 0};
  CorrelatorTable table = kw_correlators(t);
  table.set(1, {1}, Rational(1, 23));
  GradedSeries f = table.to_series(Grading::None);
  bool any = false;
  for (int m = -1; m <= 2; ++m) any = any || !apply_virasoro_oracle(f, VirasoroSpec::kw(), m).is_zero();
  EXPECT_TRUE(any);
  Truncation k6{2, 6, 6, 0};
  CorrelatorTable t6 = kw_correlators(k6);
  ASSERT_FALSE(t6.get(1, {0, 0, 1, 3}).is_zero());
  t6.set(1, {0, 0, 1, 3}, Rational(1, 23));
  EXPECT_FALSE(kdv_residual(t6.to_series(Grading::None)).residual.is_zero());
}

TEST(Kdv, KwAtHigherDegree) {
  Truncation t{2, 6, 7, 0};
  KdvResidual r = kdv_residual(kw_free_energy(t));
  EXPECT_EQ(r.certified_degree, 2);
  EXPECT_TRUE(r.residual.is_zero());
}

TEST(Kdv, TooSmallTruncationRejected) {
  EXPECT_THROW(kdv_residual(kw_free_energy(Truncation{1, 3, 4, 0})), std::invalid_argument);
}

TEST(Homogeneity, BgwOnlyHomogeneous) {
  Truncation t{2, 6, 5, 6};
  EXPECT_TRUE(check_homogeneity(bgw_free_energy(t)).is_zero());
  EXPECT_FALSE(check_homogeneity(kw_free_energy(t)).is_zero());
}

TEST(CorrelatorTable, JsonRoundTrip) {
  CorrelatorTable t = kw_correlators(Truncation{1, 3, 3, 0});
  CorrelatorTable back = CorrelatorTable::from_json(t.to_json());
  EXPECT_EQ(back.entries(), t.entries());
  EXPECT_EQ(back.engine(), "kw");
  EXPECT_NE(t.to_csv().find("0;0;0"), std::string::npos);
}
