#pragma once

#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "skdv/monomial.hpp"
#include "skdv/rational.hpp"
#include "skdv/truncation.hpp"

namespace skdv {

struct SeriesKey {
  int h = 0;   // power of hbar
  int s2 = 0;  // power of s^2
  Monomial t;

  friend auto operator<=>(const SeriesKey&, const SeriesKey&) = default;
  friend bool operator==(const SeriesKey&, const SeriesKey&) = default;
};

struct SeriesKeyHash {
  std::size_t operator()(const SeriesKey& k) const {
    return k.t.hash() ^ (static_cast<std::size_t>(k.h + 64) * 0x9e3779b97f4a7c15ULL) ^
           (static_cast<std::size_t>(k.s2 + 64) * 0xc2b2ae3d27d4eb4fULL);
  }
};

class TruncationMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonTerminatingSubstitution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One summand of the image of t_k: coef * s^{2*ds2} * t_index, or a constant when index < 0.
struct SubstitutionTerm {
  Rational coef;
  int ds2 = 0;
  int index = -1;
};

struct Substitution {
  std::map<int, std::vector<SubstitutionTerm>> rules;
  // Monitored weight of t_k; a constant shift of t_k requires positive weight.
  std::vector<int> weight;

  void validate() const;
};

// Truncated series in hbar, s^2 and t_0..t_kmax with exact coefficients.
class GradedSeries {
 public:
  explicit GradedSeries(const Truncation& trunc) : trunc_(trunc) { trunc_.validate(); }

  static GradedSeries one(const Truncation& trunc);

  const Truncation& truncation() const { return trunc_; }
  const std::map<SeriesKey, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool admits(const SeriesKey& k) const;
  // Adds c at key; silently dropped when outside the truncation.
  void add(const SeriesKey& k, const Rational& c);
  void add(int h, int s2, const Monomial& t, const Rational& c) { add(SeriesKey{h, s2, t}, c); }
  Rational coefficient(const SeriesKey& k) const;
  Rational coefficient(int h, int s2, const Monomial& t) const {
    return coefficient(SeriesKey{h, s2, t});
  }
  Rational constant_term() const { return coefficient(0, 0, Monomial()); }

  GradedSeries& operator+=(const GradedSeries& o);
  GradedSeries& operator-=(const GradedSeries& o);
  GradedSeries& operator*=(const Rational& c);
  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
  friend GradedSeries operator*(GradedSeries a, const Rational& c) { return a *= c; }
  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

  GradedSeries exp() const;
  GradedSeries log() const;
  GradedSeries derive(int k) const;
  // Multiply by hbar^dh s^{2 ds2}.
  GradedSeries shifted(int dh, int ds2) const;
  GradedSeries substitute(const Substitution& sub) const;

  // Same coefficients seen under another truncation, dropping keys it does not admit.
  GradedSeries restricted(const Truncation& trunc) const;
  GradedSeries filtered(const std::function<bool(const SeriesKey&)>& keep) const;

  nlohmann::json to_json() const;
  static GradedSeries from_json(const nlohmann::json& j, const Truncation& trunc);

 private:
  void check_same(const GradedSeries& o) const;
  Truncation trunc_;
  std::map<SeriesKey, Rational> terms_;
};

}  // namespace skdv
