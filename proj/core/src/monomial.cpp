#include "skdv/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace skdv {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (auto [i, e] : factors) {
    if (i < 0 || e < 0) throw std::invalid_argument("negative index or exponent in monomial");
    if (e == 0) continue;
    if (!f_.empty() && f_.back().first == i)
      f_.back().second += e;
    else
      f_.emplace_back(i, e);
  }
}

Monomial Monomial::from_multiset(const Multiset& k) {
  std::vector<Factor> f;
  for (int x : k) f.emplace_back(x, 1);
  return Monomial(std::move(f));
}

int Monomial::degree() const {
  int d = 0;
  for (auto [i, e] : f_) d += e;
  return d;
}

int Monomial::index_sum() const {
  int s = 0;
  for (auto [i, e] : f_) s += i * e;
  return s;
}

int Monomial::exponent(int index) const {
  for (auto [i, e] : f_)
    if (i == index) return e;
  return 0;
}

Multiset Monomial::to_multiset() const {
  Multiset k;
  for (auto [i, e] : f_)
    for (int j = 0; j < e; ++j) k.push_back(i);
  return k;
}

Integer Monomial::automorphisms() const {
  Integer r = 1;
  for (auto [i, e] : f_) r *= factorial(e);
  return r;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin();
  auto b = o.f_.begin();
  while (a != f_.end() || b != o.f_.end()) {
    if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
      r.f_.push_back(*a++);
    } else if (a == f_.end() || b->first < a->first) {
      r.f_.push_back(*b++);
    } else {
      r.f_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::lowered(int index) const {
  for (std::size_t p = 0; p < f_.size(); ++p) {
    if (f_[p].first != index) continue;
    Monomial r = *this;
    if (--r.f_[p].second == 0) r.f_.erase(r.f_.begin() + static_cast<std::ptrdiff_t>(p));
    return r;
  }
  return std::nullopt;
}

std::string Monomial::str() const {
  if (f_.empty()) return "1";
  std::string s;
  for (auto [i, e] : f_) {
    if (!s.empty()) s += "*";
    s += "t" + std::to_string(i);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto [i, e] : f_) {
    h = (h ^ static_cast<std::size_t>(i)) * 1099511628211ULL;
    h = (h ^ static_cast<std::size_t>(e + 97)) * 1099511628211ULL;
  }
  return h;
}

}  // namespace skdv
