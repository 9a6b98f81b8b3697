#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skdv/kappa.hpp"

namespace skdv {

// <tau_m>_0 = 2^{-(m+1)} / ((m+1)(2m+1) m!).
Rational spin_one_point(int m);
// <tau_{m1} tau_{m2}>_0 = 2^{-(|m|+1)} / ((|m|+1) m1! m2!).
Rational spin_two_point(int m1, int m2);
// 2^{-|m|-1} * 2(2|m|+n-1)!/(2|m|+2)! * prod 1/m_i!, any n >= 1.
Rational genus0_closed_form(const Multiset& m);

// Genus 0 spin correlators from the TRR, seeded by <tau_0^3>_0 = 1 and
// <tau_k tau_0>_0; all-tau_0 correlators reduce through the dilaton relation.
class Genus0Trr {
 public:
  Rational correlator(Multiset k);

 private:
  std::map<Multiset, Rational> memo_;
};

// Spin correlators of all genera: unstable pieces from their closed forms,
// stable ones as bracketed kappa correlators. One instance per thread.
class SpinOracle {
 public:
  Rational correlator(int g, Multiset k);
  ZkOracle& zk() { return zk_; }

 private:
  ZkOracle zk_;
  std::map<std::pair<int, Multiset>, Rational> memo_;
};

CorrelatorTable genus0_spin_trr(const Truncation& trunc);
// Genus 0 slice cross-checked against the TRR and the closed form.
CorrelatorTable spin_correlators(const Truncation& trunc);

// log Z^Omega, unstable (0,1) and (0,2) pieces included, no vacuum terms.
GradedSeries assemble_z_omega(const Truncation& trunc);

// Pieces of the operator D in free-energy form.
GradedSeries chi_series(const Truncation& trunc);       // chi(hbar s^{-2})
GradedSeries s_alpha_series(const Truncation& trunc);   // hbar^{-1} S_alpha
GradedSeries f02_half_series(const Truncation& trunc);  // hbar^{-1} F_{0,2} / 2
Substitution shift_substitution(int kmax);              // t_k -> sum (s^2/2)^m t_{k+m}/m!

class NormalizationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// log(D Z^K) from log Z^K with vacuum terms attached.
GradedSeries d_operator_apply(const GradedSeries& zk_log);

struct SeriesMismatch {
  SeriesKey key;
  std::vector<Rational> values;
};

struct ComparisonReport {
  std::vector<std::string> routes;
  std::size_t compared = 0;
  std::size_t nonzero = 0;
  std::vector<SeriesMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
  nlohmann::json to_json() const;
};

ComparisonReport compare_series(const std::vector<std::string>& names,
                                const std::vector<GradedSeries>& series);

// BGW from Virasoro, Z^Omega from the spin assembly, and D Z^K.
ComparisonReport theorem1_compare(const Truncation& trunc);

}  // namespace skdv
