#include "skdv/volume.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "skdv/combinatorics.hpp"
#include "skdv/virasoro.hpp"

namespace skdv {

namespace {

// p_j(beta) / beta^j = -(-1)^j / j!
Rational shift_coefficient(int j) {
  Rational c(Integer(1), factorial(j));
  return j % 2 == 0 ? -c : c;
}

Multiset sorted(Multiset k) {
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

std::vector<Rational> TranslatedCorrelators::coefficients(int g, Multiset k, int wmax) {
  k = sorted(std::move(k));
  if (wmax < 0) return {};
  auto key = std::make_pair(g, k);
  auto it = memo_.find(key);
  if (it != memo_.end() && static_cast<int>(it->second.size()) > wmax)
    return {it->second.begin(), it->second.begin() + wmax + 1};

  std::vector<Rational> out(wmax + 1);
  for (int w = 0; w <= wmax; ++w) {
    if (w == 0) {
      out[0] = spin_.correlator(g, k);
      continue;
    }
    Rational acc;
    for_each_partition(w, [&](const Multiset& parts) {
      Rational c(1);
      for (int j : parts) c *= shift_coefficient(j);
      c /= Rational(automorphisms(parts));
      Multiset all = k;
      all.insert(all.end(), parts.begin(), parts.end());
      acc += c * spin_.correlator(g, sorted(std::move(all)));
    });
    out[w] = acc;
  }
  memo_[key] = out;
  return out;
}

Alphabet pi2_alphabet() {
  static const Alphabet a = make_alphabet({"pi2"});
  return a;
}

void VolumePolynomial::add(int s2, std::vector<int> k, const FormalPolynomial& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(s2, std::move(k));
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FormalPolynomial VolumePolynomial::coefficient(int s2, const std::vector<int>& k) const {
  auto it = terms_.find({s2, k});
  return it == terms_.end() ? FormalPolynomial(pi2_alphabet()) : it->second;
}

std::map<std::vector<int>, FormalPolynomial> VolumePolynomial::order(int s2) const {
  std::map<std::vector<int>, FormalPolynomial> out;
  for (const auto& [key, c] : terms_)
    if (key.first == s2) out.emplace(key.second, c);
  return out;
}

nlohmann::json VolumePolynomial::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : terms_) {
    nlohmann::json coef = nlohmann::json::array();
    for (const auto& [e, v] : c.terms()) coef.push_back({e.empty() ? 0 : e[0], v.str()});
    terms.push_back({{"s2", key.first}, {"k", key.second}, {"pi2", coef}});
  }
  return {{"g", g_}, {"n", n_}, {"smax", smax_}, {"terms", terms}};
}

std::string VolumePolynomial::str() const {
  std::ostringstream os;
  os << "V[" << g_ << "," << n_ << "] = ";
  std::map<int, std::vector<std::string>> by_order;
  for (const auto& [key, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < key.second.size(); ++i) {
      int e = key.second[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "L" + std::to_string(i + 1) + (e == 1 ? "^2" : "^" + std::to_string(2 * e));
    }
    std::string coef = c.str();
    if (mono.empty()) by_order[key.first].push_back(coef);
    else if (coef == "1") by_order[key.first].push_back(mono);
    else by_order[key.first].push_back("(" + coef + ")*" + mono);
  }
  bool first = true;
  for (const auto& [a, parts] : by_order) {
    if (!first) os << " + ";
    first = false;
    std::string inner;
    for (std::size_t i = 0; i < parts.size(); ++i) inner += (i ? " + " : "") + parts[i];
    std::string sp = a == 0 ? "" : (a == 1 ? "s^2" : "s^" + std::to_string(2 * a));
    if (sp.empty()) os << inner;
    else os << sp << "*(" << inner << ")";
  }
  if (first) os << "0";
  os << " + O(s^" << 2 * (smax_ + 1) << ")";
  return os.str();
}

VolumePolynomial volume_polynomial(TranslatedCorrelators& tc, int g, int n, int smax) {
  if (g < 0 || n < 1) throw std::invalid_argument("volume_polynomial needs g >= 0 and n >= 1");
  VolumePolynomial out(g, n, smax);
  Alphabet pi2 = pi2_alphabet();
  // a = 1 - g + |k| + w <= smax
  int kbudget = smax - 1 + g;
  if (kbudget < 0) return out;
  for_each_tuple(n, kbudget, kbudget, [&](const std::vector<int>& k) {
    int ksum = 0;
    for (int x : k) ksum += x;
    if (ksum > kbudget) return;
    Rational pref(1);
    for (int x : k) pref /= Rational(power_of_two(x) * factorial(x));
    int wmax = kbudget - ksum;
    std::vector<Rational> c = tc.coefficients(g, k, wmax);
    for (int w = 0; w < static_cast<int>(c.size()); ++w) {
      if (c[w].is_zero()) continue;
      // beta = 2 pi^2
      Rational v = pref * c[w] * Rational(power_of_two(w));
      out.add(1 - g + ksum + w, k, FormalPolynomial::monomial(pi2, w == 0 ? std::vector<int>{} : std::vector<int>{w}, v));
    }
  });
  return out;
}

VolumePolynomial volume_polynomial(int g, int n, int smax) {
  TranslatedCorrelators tc;
  return volume_polynomial(tc, g, n, smax);
}

GradedSeries translated_free_energy(TranslatedCorrelators& tc, const Truncation& trunc,
                                    const Rational& beta) {
  GradedSeries out(trunc);
  for (int g = 0; g <= trunc.gmax; ++g) {
    int kbudget = trunc.smax - 1 + g;
    if (kbudget < 0) continue;
    for (int n = 1; n <= trunc.dmax; ++n)
    for_each_multiset_bounded(n, trunc.kmax, kbudget, [&](const Multiset& k) {
      int ksum = total(k);
      std::vector<Rational> c = tc.coefficients(g, k, kbudget - ksum);
      // Each power of beta sits at its own s^2 order.
      Rational bw(1);
      for (int w = 0; w < static_cast<int>(c.size()); ++w) {
        if (!c[w].is_zero())
          out.add(g - 1, 1 - g + ksum + w, Monomial::from_multiset(k),
                  c[w] * bw / Rational(automorphisms(k)));
        bw *= beta;
      }
    });
  }
  return out;
}

bool TranslatedCheckReport::ok() const {
  for (const auto& e : entries)
    if (e.residual_terms != 0) return false;
  return !entries.empty();
}

nlohmann::json TranslatedCheckReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries)
    rows.push_back({{"beta", e.beta.str()}, {"m", e.m}, {"residual_terms", e.residual_terms}});
  return {{"region", skdv::to_json(region)},
          {"source_kmax", source_kmax},
          {"beta_degree", beta_degree},
          {"entries", rows},
          {"ok", ok()}};
}

TranslatedCheckReport translated_virasoro_check(const Truncation& trunc, int m_max) {
  trunc.validate();
  VirasoroSpec spec = VirasoroSpec::gbgw();
  if (m_max < 0 || m_max > spec.m_max) throw std::invalid_argument("m_max out of range");
  if (trunc.dmax < 3) throw std::invalid_argument("translated check needs dmax >= 3");

  TranslatedCheckReport report;
  // Indices beyond smax + gmax - 1 carry no coefficient below s^{2(smax+1)}.
  Truncation source = trunc;
  source.kmax = std::max(trunc.kmax, trunc.smax + trunc.gmax) + m_max;
  report.source_kmax = source.kmax;
  report.beta_degree = trunc.smax + trunc.gmax - 1;
  report.region = trunc;
  report.region.dmax = trunc.dmax - 2;

  TranslatedCorrelators tc;
  for (int b = 0; b <= report.beta_degree; ++b) {
    Rational beta(b);
    GradedSeries fb = translated_free_energy(tc, source, beta);
    std::vector<Rational> shift(source.kmax + 1);
    Rational bj(1);
    for (int j = 1; j <= source.kmax; ++j) {
      bj *= beta;
      shift[j] = -shift_coefficient(j) * bj;  // t_j + p_j(beta)
    }
    for (int m = 0; m <= m_max; ++m) {
      GradedSeries res = apply_virasoro_oracle(fb, spec, m, shift);
      report.entries.push_back({beta, m, res.restricted(report.region).size()});
    }
  }
  return report;
}

}  // namespace skdv
