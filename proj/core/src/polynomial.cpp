#include "skdv/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace skdv {

namespace {

void trim(FormalPolynomial::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

FormalPolynomial::Exponents add_exponents(const FormalPolynomial::Exponents& a,
                                          const FormalPolynomial::Exponents& b) {
  FormalPolynomial::Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

int weight_of(const FormalPolynomial::Exponents& e, const std::vector<int>& w) {
  int s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * (i < w.size() ? w[i] : 1);
  return s;
}

}  // namespace

Alphabet make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

Alphabet indexed_alphabet(const std::string& prefix, int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return make_alphabet(std::move(names));
}

FormalPolynomial::FormalPolynomial(const Rational& c, Alphabet alphabet)
    : alphabet_(std::move(alphabet)) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

FormalPolynomial FormalPolynomial::variable(Alphabet alphabet, int index, int power) {
  Exponents e(static_cast<std::size_t>(index + 1), 0);
  e[static_cast<std::size_t>(index)] = power;
  return monomial(std::move(alphabet), std::move(e), Rational(1));
}

FormalPolynomial FormalPolynomial::monomial(Alphabet alphabet, Exponents e, const Rational& c) {
  if (alphabet && e.size() > alphabet->size()) {
    for (std::size_t i = alphabet->size(); i < e.size(); ++i)
      if (e[i] != 0) throw std::out_of_range("monomial exponent outside alphabet");
  }
  FormalPolynomial p(std::move(alphabet));
  p.add_term(std::move(e), c);
  return p;
}

void FormalPolynomial::add_term(Exponents e, const Rational& c) {
  if (c.is_zero()) return;
  for (int x : e)
    if (x < 0) throw std::invalid_argument("negative exponent in polynomial");
  trim(e);
  auto [it, inserted] = terms_.try_emplace(std::move(e), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational FormalPolynomial::coefficient(const Exponents& e) const {
  Exponents k = e;
  trim(k);
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational() : it->second;
}

bool FormalPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

int FormalPolynomial::degree_in(int var) const {
  int d = 0;
  for (const auto& [e, c] : terms_)
    if (var < static_cast<int>(e.size())) d = std::max(d, e[static_cast<std::size_t>(var)]);
  return d;
}

int FormalPolynomial::weighted_degree(const std::vector<int>& weights) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, weight_of(e, weights));
  return d;
}

Alphabet FormalPolynomial::merge(const FormalPolynomial& a, const FormalPolynomial& b) {
  if (!a.alphabet_) return b.alphabet_;
  if (!b.alphabet_ || a.alphabet_ == b.alphabet_) return a.alphabet_;
  if (*a.alphabet_ == *b.alphabet_) return a.alphabet_;
  if (a.is_constant()) return b.alphabet_;
  if (b.is_constant()) return a.alphabet_;
  throw std::invalid_argument("polynomials over different alphabets");
}

FormalPolynomial& FormalPolynomial::operator+=(const FormalPolynomial& o) {
  alphabet_ = merge(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

FormalPolynomial& FormalPolynomial::operator-=(const FormalPolynomial& o) {
  alphabet_ = merge(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

FormalPolynomial& FormalPolynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

FormalPolynomial FormalPolynomial::operator-() const {
  FormalPolynomial r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

FormalPolynomial operator*(const FormalPolynomial& a, const FormalPolynomial& b) {
  FormalPolynomial r(FormalPolynomial::merge(a, b));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(add_exponents(ea, eb), ca * cb);
  return r;
}

FormalPolynomial FormalPolynomial::mul_truncated(const FormalPolynomial& a,
                                                 const FormalPolynomial& b,
                                                 const std::vector<int>& weights,
                                                 int max_weight) {
  FormalPolynomial r(merge(a, b));
  for (const auto& [ea, ca] : a.terms_) {
    int wa = weight_of(ea, weights);
    if (wa > max_weight) continue;
    for (const auto& [eb, cb] : b.terms_) {
      if (wa + weight_of(eb, weights) > max_weight) continue;
      r.add_term(add_exponents(ea, eb), ca * cb);
    }
  }
  return r;
}

FormalPolynomial FormalPolynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  FormalPolynomial r(Rational(1), alphabet_);
  FormalPolynomial base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

std::string FormalPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    if (!first) {
      os << (v.sign() < 0 ? " - " : " + ");
      if (v.sign() < 0) v = -v;
    }
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (has_var) vars << "*";
      has_var = true;
      vars << (alphabet_ && i < alphabet_->size() ? (*alphabet_)[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) vars << "^" << e[i];
    }
    if (!has_var) {
      os << v.str();
    } else if (v.is_one()) {
      os << vars.str();
    } else if (v == Rational(-1)) {
      os << "-" << vars.str();
    } else {
      os << v.str() << "*" << vars.str();
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FormalPolynomial& p) { return os << p.str(); }

}  // namespace skdv
