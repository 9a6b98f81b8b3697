#include "skdv/spin.hpp"

#include <algorithm>
#include <set>

#include "skdv/parallel.hpp"

namespace skdv {

namespace {

Rational inv_two_pow_fact(int j) {
  return Rational(1) / (Rational(power_of_two(j)) * Rational(factorial(j)));
}

std::string point_str(int g, const Multiset& k) {
  std::string s = "g=" + std::to_string(g) + " k=(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

}  // namespace

Rational spin_one_point(int m) {
  return Rational(1) / (Rational(power_of_two(m + 1)) * Rational(m + 1) * Rational(2 * m + 1) *
                        Rational(factorial(m)));
}

Rational spin_two_point(int m1, int m2) {
  int s = m1 + m2;
  return Rational(1) /
         (Rational(power_of_two(s + 1)) * Rational(s + 1) * Rational(factorial(m1) * factorial(m2)));
}

Rational genus0_closed_form(const Multiset& m) {
  if (m.empty()) throw std::invalid_argument("closed form needs n >= 1");
  int n = static_cast<int>(m.size());
  int s = total(m);
  Rational p = Rational(2 * factorial(2 * s + n - 1), factorial(2 * s + 2));
  Rational r = p / Rational(power_of_two(s + 1));
  for (int x : m) r /= Rational(factorial(x));
  return r;
}

Rational Genus0Trr::correlator(Multiset k) {
  std::sort(k.begin(), k.end());
  int n = static_cast<int>(k.size());
  if (n < 2) throw std::invalid_argument("genus 0 TRR needs at least two insertions");
  if (n == 2) {
    if (k[0] != 0) throw std::invalid_argument("TRR seeds only cover <tau_k tau_0>_0");
    return inv_two_pow_fact(k[1] + 1);
  }
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  Rational v;
  if (k.back() == 0) {
    v = n == 3 ? Rational(1) : Rational(n - 1) * correlator(Multiset(static_cast<std::size_t>(n - 1), 0));
  } else {
    int k1 = k.back();
    int k2 = k[0], k3 = k[1];
    Multiset pool(k.begin() + 2, k.end() - 1);
    // Sum over I in the pool with labelled multiplicities.
    std::size_t npool = pool.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << npool); ++mask) {
      Multiset first{0, k1 - 1};
      Multiset second{0, k2, k3};
      for (std::size_t i = 0; i < npool; ++i) ((mask >> i) & 1 ? first : second).push_back(pool[i]);
      v += correlator(first) * correlator(second);
    }
  }
  memo_.emplace(k, v);
  return v;
}

Rational SpinOracle::correlator(int g, Multiset k) {
  std::sort(k.begin(), k.end());
  int n = static_cast<int>(k.size());
  if (g < 0 || n == 0 || 1 - g + total(k) < 0) return Rational();
  if (g == 0 && n == 1) return spin_one_point(k[0]);
  if (g == 0 && n == 2) return spin_two_point(k[0], k[1]);
  auto key = std::make_pair(g, k);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rational v = bracket_from_zk(zk_, g, k);
  memo_.emplace(std::move(key), v);
  return v;
}

namespace {

std::vector<std::pair<int, Multiset>> graded_lattice(const Truncation& t, int gmax) {
  std::vector<std::pair<int, Multiset>> pts;
  for (int g = 0; g <= gmax; ++g)
    for (int n = 1; n <= t.dmax; ++n)
      for_each_multiset_bounded(n, t.kmax, t.smax + g - 1, [&](const Multiset& k) {
        if (total(k) >= g - 1) pts.emplace_back(g, k);
      });
  return pts;
}

}  // namespace

CorrelatorTable genus0_spin_trr(const Truncation& trunc) {
  trunc.validate();
  CorrelatorTable t("spin", trunc);
  Genus0Trr trr;
  for (const auto& [g, k] : graded_lattice(trunc, 0)) {
    if (k.size() < 3) continue;
    t.set(g, k, trr.correlator(k));
  }
  return t;
}

CorrelatorTable spin_correlators(const Truncation& trunc) {
  trunc.validate();
  auto pts = graded_lattice(trunc, trunc.gmax);
  auto vals = parallel_map<std::pair<int, Multiset>, Rational>(
      pts, [] { return SpinOracle(); },
      [](SpinOracle& s, const std::pair<int, Multiset>& p) { return s.correlator(p.first, p.second); });
  CorrelatorTable t("spin", trunc);
  Genus0Trr trr;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& [g, k] = pts[i];
    if (g == 0) {
      Rational closed = genus0_closed_form(k);
      Rational via_trr = k.size() >= 3 ? trr.correlator(k) : closed;
      if (closed != vals[i] || via_trr != vals[i])
        throw RouteDisagreement("genus 0 spin routes disagree at " + point_str(g, k) + ": " +
                                vals[i].str() + ", TRR " + via_trr.str() + ", closed form " +
                                closed.str());
    }
    t.set(g, k, vals[i]);
  }
  return t;
}

GradedSeries assemble_z_omega(const Truncation& trunc) {
  return spin_correlators(trunc).to_series(Grading::Spin);
}

GradedSeries chi_series(const Truncation& trunc) {
  GradedSeries s(trunc);
  for (int g = 2; g <= trunc.gmax; ++g) s.add(g - 1, 1 - g, Monomial(), euler_characteristic_abs(g));
  return s;
}

GradedSeries s_alpha_series(const Truncation& trunc) {
  GradedSeries s(trunc);
  for (int m = 0; m <= trunc.kmax; ++m)
    s.add(-1, m + 1, Monomial::variable(m),
          Rational(1) / (Rational(power_of_two(m + 1)) * Rational(factorial(m + 1)) * Rational(2 * m + 1)));
  return s;
}

GradedSeries f02_half_series(const Truncation& trunc) {
  GradedSeries s(trunc);
  for (int m1 = 0; m1 <= trunc.kmax; ++m1)
    for (int m2 = 0; m2 <= trunc.kmax; ++m2) {
      int m = m1 + m2;
      Rational c = Rational(1) / (Rational(m + 1) * Rational(power_of_two(m + 1)) *
                                  Rational(factorial(m1) * factorial(m2)));
      s.add(-1, m + 1, Monomial::variable(m1) * Monomial::variable(m2), c * Rational(1, 2));
    }
  return s;
}

Substitution shift_substitution(int kmax) {
  Substitution sub;
  for (int k = 0; k <= kmax; ++k) {
    std::vector<SubstitutionTerm> img;
    for (int m = 0; k + m <= kmax; ++m) img.push_back({inv_two_pow_fact(m), m, k + m});
    sub.rules[k] = std::move(img);
  }
  return sub;
}

GradedSeries d_operator_apply(const GradedSeries& zk_log) {
  const Truncation& t = zk_log.truncation();
  GradedSeries out = zk_log.substitute(shift_substitution(t.kmax));
  out += chi_series(t);
  out += s_alpha_series(t);
  out += f02_half_series(t);
  for (const auto& [key, c] : out.terms())
    if (key.t.empty())
      throw NormalizationMismatch("D Z^K is not normalised at t=0: hbar^" + std::to_string(key.h) +
                                  " s^" + std::to_string(2 * key.s2) + " carries " + c.str());
  return out;
}

nlohmann::json ComparisonReport::to_json() const {
  nlohmann::json mm = nlohmann::json::array();
  for (const auto& m : mismatches) {
    nlohmann::json t = nlohmann::json::array();
    for (auto [i, e] : m.key.t.factors()) t.push_back({i, e});
    nlohmann::json vals = nlohmann::json::object();
    for (std::size_t r = 0; r < routes.size(); ++r) vals[routes[r]] = m.values[r].str();
    mm.push_back({{"h", m.key.h}, {"s2", m.key.s2}, {"t", t}, {"values", vals}});
  }
  return {{"routes", routes}, {"compared", compared}, {"nonzero", nonzero},
          {"mismatches", mm}, {"ok", ok()}};
}

ComparisonReport compare_series(const std::vector<std::string>& names,
                                const std::vector<GradedSeries>& series) {
  ComparisonReport r;
  r.routes = names;
  std::set<SeriesKey> keys;
  for (const auto& s : series)
    for (const auto& [k, c] : s.terms()) keys.insert(k);
  for (const auto& k : keys) {
    std::vector<Rational> vals;
    for (const auto& s : series) vals.push_back(s.coefficient(k));
    ++r.compared;
    bool same = std::all_of(vals.begin(), vals.end(), [&](const Rational& v) { return v == vals[0]; });
    if (!same)
      r.mismatches.push_back({k, vals});
    else if (!vals[0].is_zero())
      ++r.nonzero;
  }
  return r;
}

ComparisonReport theorem1_compare(const Truncation& trunc) {
  GradedSeries bgw = bgw_free_energy(trunc);
  GradedSeries omega = assemble_z_omega(trunc);
  GradedSeries d = d_operator_apply(zk_free_energy(trunc, true));
  return compare_series({"bgw", "omega", "dzk"}, {bgw, omega, d});
}

}  // namespace skdv
