#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "skdv/rational.hpp"

namespace skdv {

using Alphabet = std::shared_ptr<const std::vector<std::string>>;

Alphabet make_alphabet(std::vector<std::string> names);
// Symbols prefix1, prefix2, ..., prefixN.
Alphabet indexed_alphabet(const std::string& prefix, int n);

// Sparse multivariate polynomial over Q in a finite alphabet.
// Exponent vectors are dense with trailing zeros trimmed, so the constant
// monomial is the empty vector for every alphabet.
class FormalPolynomial {
 public:
  using Exponents = std::vector<int>;

  FormalPolynomial() = default;
  explicit FormalPolynomial(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  FormalPolynomial(const Rational& c, Alphabet alphabet = nullptr);

  static FormalPolynomial variable(Alphabet alphabet, int index, int power = 1);
  static FormalPolynomial monomial(Alphabet alphabet, Exponents e, const Rational& c);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  void add_term(Exponents e, const Rational& c);
  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const { return coefficient({}); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  int degree_in(int var) const;
  int weighted_degree(const std::vector<int>& weights) const;

  FormalPolynomial& operator+=(const FormalPolynomial& o);
  FormalPolynomial& operator-=(const FormalPolynomial& o);
  FormalPolynomial& operator*=(const Rational& c);
  friend FormalPolynomial operator+(FormalPolynomial a, const FormalPolynomial& b) { return a += b; }
  friend FormalPolynomial operator-(FormalPolynomial a, const FormalPolynomial& b) { return a -= b; }
  friend FormalPolynomial operator*(FormalPolynomial a, const Rational& c) { return a *= c; }
  friend FormalPolynomial operator*(const Rational& c, FormalPolynomial a) { return a *= c; }
  friend FormalPolynomial operator*(const FormalPolynomial& a, const FormalPolynomial& b);
  FormalPolynomial operator-() const;
  friend bool operator==(const FormalPolynomial& a, const FormalPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  FormalPolynomial pow(int e) const;
  // Product keeping only monomials of weighted degree <= max_weight.
  static FormalPolynomial mul_truncated(const FormalPolynomial& a, const FormalPolynomial& b,
                                        const std::vector<int>& weights, int max_weight);

  std::string str() const;

  template <class T, class F>
  T evaluate(F&& value_of) const {
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term = T(c.numerator().get_str()) / T(c.denominator().get_str());
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int p = 0; p < e[i]; ++p) term *= value_of(static_cast<int>(i));
      acc += term;
    }
    return acc;
  }

 private:
  static Alphabet merge(const FormalPolynomial& a, const FormalPolynomial& b);
  Alphabet alphabet_;
  std::map<Exponents, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const FormalPolynomial& p);

}  // namespace skdv
