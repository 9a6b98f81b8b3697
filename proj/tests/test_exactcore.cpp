#include <gtest/gtest.h>

#include <random>

#include "skdv/combinatorics.hpp"
#include "skdv/graded_series.hpp"
#include "skdv/polynomial.hpp"
#include "skdv/virasoro.hpp"

using namespace skdv;

TEST(Rational, LowestTermsAndSign) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, RandomArithmeticStaysReduced) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int i = 0; i < 500; ++i) {
    long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (b == 0 || e == 0) continue;
    Rational x(a, b), y(c, e);
    Rational s = x + y, p = x * y;
    EXPECT_EQ(gcd(s.numerator(), s.denominator()), 1);
    EXPECT_GT(s.denominator(), 0);
    EXPECT_EQ(p - x * y, Rational(0));
    EXPECT_EQ((x + y) - y, x);
    if (!y.is_zero()) {
      EXPECT_EQ(x / y * y, x);
    }
  }
}

TEST(Combinatorics, Bernoulli) {
  EXPECT_EQ(bernoulli(2), Rational(1, 6));
  EXPECT_EQ(bernoulli(4), Rational(-1, 30));
  EXPECT_EQ(bernoulli(6), Rational(1, 42));
  EXPECT_EQ(bernoulli(8), Rational(-1, 30));
}

TEST(Combinatorics, EulerCharacteristic) {
  EXPECT_EQ(euler_characteristic_constant(2), Rational(-1, 240));
  EXPECT_EQ(euler_characteristic_constant(3), Rational(-1, 1008));
  EXPECT_EQ(euler_characteristic_abs(2), Rational(1, 240));
}

TEST(Combinatorics, Factorials) {
  EXPECT_EQ(double_factorial(-1), 1);
  EXPECT_EQ(double_factorial(7), 105);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(automorphisms({0, 0, 1, 1, 1}), 12);
}

TEST(Combinatorics, MultisetEnumeration) {
  int count = 0;
  for_each_multiset_bounded(3, 4, 4, [&](const Multiset& m) {
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
    EXPECT_LE(total(m), 4);
    ++count;
  });
  // partitions of 0..4 into at most 3 parts
  EXPECT_EQ(count, 1 + 1 + 2 + 3 + 4);
  int parts = 0;
  for_each_partition(6, [&](const Multiset&) { ++parts; });
  EXPECT_EQ(parts, 11);
}

namespace {

FormalPolynomial random_poly(std::mt19937& rng, const Alphabet& ab) {
  std::uniform_int_distribution<int> e(0, 2), c(-5, 5);
  FormalPolynomial p(ab);
  for (int i = 0; i < 4; ++i) p.add_term({e(rng), e(rng)}, Rational(c(rng), 1 + e(rng)));
  return p;
}

// Random series without constant term, nonnegative hbar powers.
GradedSeries random_series(std::mt19937& rng, const Truncation& t, int terms) {
  std::uniform_int_distribution<int> h(0, t.hmax()), s2(0, t.smax), deg(1, t.dmax),
      idx(0, t.kmax), c(-9, 9), d(1, 6);
  GradedSeries r(t);
  for (int i = 0; i < terms; ++i) {
    std::vector<int> k;
    int n = deg(rng);
    for (int j = 0; j < n; ++j) k.push_back(idx(rng));
    std::sort(k.begin(), k.end());
    r.add(h(rng), s2(rng), Monomial::from_multiset(k), Rational(c(rng), d(rng)));
  }
  return r;
}

}  // namespace

TEST(Polynomial, RingAxioms) {
  std::mt19937 rng(3);
  Alphabet ab = make_alphabet({"x", "y"});
  for (int i = 0; i < 50; ++i) {
    auto a = random_poly(rng, ab), b = random_poly(rng, ab), c = random_poly(rng, ab);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Polynomial, ZeroCoefficientsDropped) {
  Alphabet ab = make_alphabet({"x"});
  FormalPolynomial p(ab);
  p.add_term({1}, Rational(2));
  p.add_term({1}, Rational(-2));
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(FormalPolynomial::variable(ab, 0, 3).degree_in(0), 3);
}

TEST(GradedSeries, ExpOfSumIsProductOfExps) {
  std::mt19937 rng(11);
  Truncation t{2, 3, 4, 3};
  for (int i = 0; i < 10; ++i) {
    GradedSeries a = random_series(rng, t, 6), b = random_series(rng, t, 6);
    EXPECT_EQ((a + b).exp(), a.exp() * b.exp());
  }
}

TEST(GradedSeries, LogInvertsExp) {
  std::mt19937 rng(12);
  Truncation t{2, 3, 4, 3};
  for (int i = 0; i < 10; ++i) {
    GradedSeries a = random_series(rng, t, 8);
    EXPECT_EQ(a.exp().log(), a);
  }
}

TEST(GradedSeries, LeibnizRule) {
  std::mt19937 rng(13);
  Truncation t{2, 3, 5, 3};
  Truncation inner = t;
  inner.dmax = t.dmax - 1;
  for (int i = 0; i < 10; ++i) {
    GradedSeries a = random_series(rng, t, 6), b = random_series(rng, t, 6);
    for (int k = 0; k <= t.kmax; ++k) {
      GradedSeries lhs = (a * b).derive(k);
      GradedSeries rhs = a.derive(k) * b + a * b.derive(k);
      EXPECT_EQ(lhs.restricted(inner), rhs.restricted(inner));
    }
  }
}

TEST(GradedSeries, JsonRoundTrip) {
  std::mt19937 rng(14);
  Truncation t{2, 3, 4, 3};
  GradedSeries a = random_series(rng, t, 12);
  EXPECT_EQ(GradedSeries::from_json(a.to_json(), t), a);
  EXPECT_EQ(truncation_from_json(to_json(t)), t);
}

TEST(GradedSeries, MismatchedTruncationsRejected) {
  GradedSeries a(Truncation{2, 3, 4, 3}), b(Truncation{2, 3, 5, 3});
  EXPECT_THROW(a + b, TruncationMismatch);
  EXPECT_THROW(Truncation({-1, 0, 0, 0}).validate(), std::invalid_argument);
}

TEST(GradedSeries, ConstantShiftWithoutWeightRejected) {
  Substitution sub;
  sub.rules[1] = {{Rational(1), 0, -1}};
  GradedSeries a = GradedSeries::one(Truncation{1, 2, 3, 0});
  EXPECT_THROW(a.substitute(sub), NonTerminatingSubstitution);
}

TEST(GradedSeries, TruncationMonotone) {
  Truncation small{1, 4, 3, 0}, large{2, 6, 5, 0};
  EXPECT_EQ(kw_free_energy(large).restricted(small), kw_free_energy(small));
  Truncation s_small{1, 3, 3, 2}, s_large{2, 5, 4, 4};
  EXPECT_EQ(bgw_free_energy(s_large).restricted(s_small), bgw_free_energy(s_small));
}
