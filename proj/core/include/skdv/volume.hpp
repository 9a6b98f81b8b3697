#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skdv/spin.hpp"

namespace skdv {

// Spin correlators translated by t_j -> t_j + p_j(beta), p_j(beta) = -(-beta)^j/j!, as
// polynomials in beta: entry w is the coefficient of beta^w, carried at s^{2(1-g+|k|+w)}.
// One instance per thread.
class TranslatedCorrelators {
 public:
  // Coefficients up to beta^{wmax}.
  std::vector<Rational> coefficients(int g, Multiset k, int wmax);
  SpinOracle& spin() { return spin_; }

 private:
  SpinOracle spin_;
  std::map<std::pair<int, Multiset>, std::vector<Rational>> memo_;
};

Alphabet pi2_alphabet();

// V_{g,n}(s, L): per (s^2-power, ordered L^2-exponents) a polynomial in pi^2.
class VolumePolynomial {
 public:
  using Key = std::pair<int, std::vector<int>>;

  VolumePolynomial(int g, int n, int smax) : g_(g), n_(n), smax_(smax) {}

  int g() const { return g_; }
  int n() const { return n_; }
  int smax() const { return smax_; }
  const std::map<Key, FormalPolynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(int s2, std::vector<int> k, const FormalPolynomial& c);
  FormalPolynomial coefficient(int s2, const std::vector<int>& k) const;
  // Sub-polynomial at a fixed s^2 power.
  std::map<std::vector<int>, FormalPolynomial> order(int s2) const;

  nlohmann::json to_json() const;
  // "V[g,n] = ... + O(s^{2(smax+1)})"
  std::string str() const;

 private:
  int g_, n_, smax_;
  std::map<Key, FormalPolynomial> terms_;
};

// Stable (g,n) or (0,1), (0,2); terms with s^2-power <= smax.
VolumePolynomial volume_polynomial(int g, int n, int smax);
VolumePolynomial volume_polynomial(TranslatedCorrelators& tc, int g, int n, int smax);

struct TranslatedCheckEntry {
  Rational beta;
  int m = 0;
  std::size_t residual_terms = 0;
};

struct TranslatedCheckReport {
  Truncation region;
  int source_kmax = 0;
  int beta_degree = 0;
  std::vector<TranslatedCheckEntry> entries;

  bool ok() const;
  nlohmann::json to_json() const;
};

// Free energy of the translated spin partition function at a rational beta.
GradedSeries translated_free_energy(TranslatedCorrelators& tc, const Truncation& trunc,
                                    const Rational& beta);

// Conjugated constraints (2m+1)!! d_m - L_m(t + p(beta)) - shift on the
// translated free energy, at beta = 0..D where D bounds the beta-degree of
// every residual coefficient; vanishing at D+1 points proves the identity in Q[beta].
TranslatedCheckReport translated_virasoro_check(const Truncation& trunc, int m_max = 4);

}  // namespace skdv
