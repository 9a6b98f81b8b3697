#pragma once

#include <map>
#include <string>
#include <vector>

#include "skdv/polynomial.hpp"

namespace skdv {

// Coefficient ring Q[s2, pi2] shared by the spectral curves.
Alphabet spectral_alphabet();
FormalPolynomial s2_power(int k);
FormalPolynomial pi2_power(int k);

// Finite Laurent polynomial in one variable with coefficients in Q[s2, pi2].
class LaurentSeries {
 public:
  LaurentSeries() = default;

  static LaurentSeries monomial(int power, const FormalPolynomial& c);

  const std::map<int, FormalPolynomial>& terms() const { return terms_; }
  FormalPolynomial coefficient(int power) const;
  void add(int power, const FormalPolynomial& c);
  bool is_zero() const { return terms_.empty(); }
  int min_power() const;
  int max_power() const;

  LaurentSeries& operator+=(const LaurentSeries& o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries operator*(const Rational& c) const;

  // f(-z)
  LaurentSeries reflected() const;
  // Terms with power in [lo, hi].
  LaurentSeries window(int lo, int hi) const;
  std::string str(const std::string& var = "z") const;

 private:
  std::map<int, FormalPolynomial> terms_;
};

// b with a * b = 1 + O(w^{order+1}), for a power series a in one formal variable with a[0] = 1.
std::vector<FormalPolynomial> invert_unit_series(const std::vector<FormalPolynomial>& a, int order);

}  // namespace skdv
