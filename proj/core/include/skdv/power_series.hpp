#pragma once

#include <stdexcept>
#include <vector>

#include "skdv/rational.hpp"

namespace skdv {

// Univariate power series truncated at a fixed order, coefficients in a
// commutative Q-algebra R (Rational or FormalPolynomial).
template <class R>
class PowerSeries {
 public:
  explicit PowerSeries(int order) : c_(static_cast<std::size_t>(order + 1), R(Rational(0))) {}

  int order() const { return static_cast<int>(c_.size()) - 1; }
  R& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }
  const R& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }

  PowerSeries& operator+=(const PowerSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  PowerSeries& operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
  }
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator*(PowerSeries a, const Rational& r) { return a *= r; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    a.check(b);
    PowerSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i)
      for (int j = 0; i + j <= a.order(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }

  // exp of a series without constant term, via n e_n = sum_k k s_k e_{n-k}.
  PowerSeries exp() const {
    if (!(c_[0] == R(Rational(0)))) throw std::invalid_argument("exp needs zero constant term");
    PowerSeries e(order());
    e[0] = R(Rational(1));
    for (int n = 1; n <= order(); ++n) {
      R acc(Rational(0));
      for (int k = 1; k <= n; ++k) acc += c_[static_cast<std::size_t>(k)] * e[n - k] * Rational(k);
      e[n] = acc * Rational(1, n);
    }
    return e;
  }

  // log of a series with constant term 1, via n l_n = n s_n - sum_k k l_k s_{n-k}.
  PowerSeries log() const {
    if (!(c_[0] == R(Rational(1)))) throw std::invalid_argument("log needs constant term 1");
    PowerSeries l(order());
    for (int n = 1; n <= order(); ++n) {
      R acc = c_[static_cast<std::size_t>(n)] * Rational(n);
      for (int k = 1; k < n; ++k) acc -= l[k] * c_[static_cast<std::size_t>(n - k)] * Rational(k);
      l[n] = acc * Rational(1, n);
    }
    return l;
  }

 private:
  void check(const PowerSeries& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("power series order mismatch");
  }
  std::vector<R> c_;
};

}  // namespace skdv
