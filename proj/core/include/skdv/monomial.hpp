#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skdv/combinatorics.hpp"

namespace skdv {

// Monomial in t_0, t_1, ... stored as sorted (index, exponent) pairs.
class Monomial {
 public:
  using Factor = std::pair<int, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);
  static Monomial from_multiset(const Multiset& k);
  static Monomial variable(int index, int exponent = 1) { return Monomial({{index, exponent}}); }

  const std::vector<Factor>& factors() const { return f_; }
  bool empty() const { return f_.empty(); }
  int degree() const;
  int max_index() const { return f_.empty() ? -1 : f_.back().first; }
  // Sum of indices with multiplicity, |k|.
  int index_sum() const;
  int exponent(int index) const;
  Multiset to_multiset() const;
  Integer automorphisms() const;

  Monomial operator*(const Monomial& o) const;
  // Lower the exponent of t_index by one; nullopt if absent.
  std::optional<Monomial> lowered(int index) const;

  std::string str() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;

 private:
  std::vector<Factor> f_;
};

}  // namespace skdv
