#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "skdv/correlator_table.hpp"
#include "skdv/polynomial.hpp"
#include "skdv/virasoro.hpp"

namespace skdv {

// sigma_1..sigma_N with exp(-sum sigma_i t^i) = sum (-1)^k (2k+1)!! t^k; index 0 unused.
std::vector<Rational> sigma_coefficients(int N);

struct KappaPolynomial {
  int m = 0;
  FormalPolynomial poly;  // in kappa_1..kappa_N

  nlohmann::json to_json() const;
};

Alphabet kappa_alphabet(int N);
// K_0..K_N from exp(sum sigma_i kappa_i t^i).
std::vector<KappaPolynomial> k_polynomials(int N);
// p_0..p_J in b_1..b_J with 1 - exp(-sum b_i z^i) = sum p_j z^j.
std::vector<FormalPolynomial> translation_polynomials(int J);

class RouteDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExceptionalPair : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mixed kappa-psi intersection numbers by translation of KW correlators.
// Holds a KW solver, so one instance per thread.
class KappaIntegrals {
 public:
  KappaIntegrals() : kw_(Model::KW) {}

  // Integral of kappa^a psi^k over M_{g,n}; a[j-1] is the exponent of kappa_j.
  Rational kappa_psi(int g, const std::vector<int>& a, const Multiset& k);
  // Integral of a kappa polynomial times psi^k.
  Rational integrate(int g, const FormalPolynomial& kappa_poly, const Multiset& k);

  // Integral of K_m psi^k on M_{g,n} via the kappa polynomial K_m (route a).
  Rational zk_via_kappa(int g, const Multiset& k);
  // Same integral via the constant shift t_j -> t_j + (-1)^j (2j-1)!! of KW (route b).
  Rational zk_via_shift(int g, const Multiset& k);

  CorrelatorSolver& kw() { return kw_; }

 private:
  const FormalPolynomial& p(int j);
  const KappaPolynomial& K(int m);
  Rational b_coefficient(const Multiset& parts, const FormalPolynomial::Exponents& a);
  const std::map<Multiset, Rational>& shift_weights(int m);

  CorrelatorSolver kw_;
  std::vector<FormalPolynomial> p_;
  std::vector<KappaPolynomial> K_;
  std::map<std::pair<Multiset, FormalPolynomial::Exponents>, Rational> bcoef_;
  std::map<int, std::map<Multiset, Rational>> weights_;
  std::map<std::pair<int, Multiset>, Rational> shift_memo_;
};

// The value of the full kappa class at (g, k), memoised (route b).
class ZkOracle {
 public:
  Rational correlator(int g, Multiset k);
  KappaIntegrals& integrals() { return ki_; }

 private:
  KappaIntegrals ki_;
};

// <prod tau_{(k_i)}>^K: expands psi^{(k)} = sum_j psi^{k-j} / (2^j j!).
Rational bracket_from_zk(ZkOracle& zk, int g, const Multiset& k);

CorrelatorTable zk_correlators(const Truncation& trunc);
CorrelatorTable bracket_psi_correlators(const Truncation& trunc);

// log Z^K(s) with s^{2(1-g+|k|)} grading; vacuum terms -|chi(M_g)| hbar^{g-1} s^{2(1-g)} optional.
GradedSeries zk_free_energy(const Truncation& trunc, bool with_vacuum);

// Integral of K_m times a companion kappa-psi monomial, where the vanishing theorem applies.
Rational vanishing_check(int g, int n, int m, const std::vector<int>& kappa_exponents,
                         const Multiset& psi);

}  // namespace skdv
