#include "skdv/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace skdv {

Alphabet spectral_alphabet() {
  static const Alphabet a = make_alphabet({"s2", "pi2"});
  return a;
}

FormalPolynomial s2_power(int k) {
  if (k == 0) return FormalPolynomial(Rational(1), spectral_alphabet());
  return FormalPolynomial::variable(spectral_alphabet(), 0, k);
}

FormalPolynomial pi2_power(int k) {
  if (k == 0) return FormalPolynomial(Rational(1), spectral_alphabet());
  return FormalPolynomial::variable(spectral_alphabet(), 1, k);
}

LaurentSeries LaurentSeries::monomial(int power, const FormalPolynomial& c) {
  LaurentSeries s;
  s.add(power, c);
  return s;
}

FormalPolynomial LaurentSeries::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? FormalPolynomial(spectral_alphabet()) : it->second;
}

void LaurentSeries::add(int power, const FormalPolynomial& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(power);
  if (it == terms_.end()) {
    terms_.emplace(power, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int LaurentSeries::min_power() const {
  if (terms_.empty()) throw std::logic_error("empty Laurent series has no lowest power");
  return terms_.begin()->first;
}

int LaurentSeries::max_power() const {
  if (terms_.empty()) throw std::logic_error("empty Laurent series has no highest power");
  return terms_.rbegin()->first;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  for (const auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries out;
  for (const auto& [p, c] : a.terms_)
    for (const auto& [q, d] : b.terms_) out.add(p + q, c * d);
  return out;
}

LaurentSeries LaurentSeries::operator*(const Rational& c) const {
  LaurentSeries out;
  for (const auto& [p, v] : terms_) out.add(p, v * c);
  return out;
}

LaurentSeries LaurentSeries::reflected() const {
  LaurentSeries out;
  for (const auto& [p, c] : terms_) out.add(p, p % 2 == 0 ? c : -c);
  return out;
}

LaurentSeries LaurentSeries::window(int lo, int hi) const {
  LaurentSeries out;
  for (const auto& [p, c] : terms_)
    if (p >= lo && p <= hi) out.add(p, c);
  return out;
}

std::string LaurentSeries::str(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (p != 0) os << "*" << var << "^" << p;
  }
  return os.str();
}

std::vector<FormalPolynomial> invert_unit_series(const std::vector<FormalPolynomial>& a, int order) {
  if (a.empty() || !(a[0] == FormalPolynomial(Rational(1), a[0].alphabet())))
    throw std::invalid_argument("series inversion needs constant term 1");
  std::vector<FormalPolynomial> b(order + 1, FormalPolynomial(a[0].alphabet()));
  b[0] = a[0];
  for (int k = 1; k <= order; ++k) {
    FormalPolynomial acc(a[0].alphabet());
    for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i) acc += a[i] * b[k - i];
    b[k] = -acc;
  }
  return b;
}

}  // namespace skdv
