#include "skdv/kappa.hpp"

#include <algorithm>

#include "skdv/parallel.hpp"
#include "skdv/power_series.hpp"

namespace skdv {

namespace {

// Alphabet size for kappa_j and b_j; weights beyond it are out of reach anyway.
constexpr int kAlphabetSize = 40;

const Alphabet& shared_kappa_alphabet() {
  static const Alphabet a = indexed_alphabet("kappa", kAlphabetSize);
  return a;
}

const Alphabet& shared_b_alphabet() {
  static const Alphabet a = indexed_alphabet("b", kAlphabetSize);
  return a;
}

std::vector<KappaPolynomial> k_polynomials_in(int N, const Alphabet& alphabet) {
  auto sigma = sigma_coefficients(std::max(N, 1));
  PowerSeries<FormalPolynomial> S(N);
  for (int i = 1; i <= N; ++i) S[i] = FormalPolynomial::variable(alphabet, i - 1) * sigma[i];
  auto E = S.exp();
  std::vector<KappaPolynomial> out;
  for (int m = 0; m <= N; ++m) {
    FormalPolynomial p(alphabet);
    p += E[m];
    out.push_back({m, p});
  }
  return out;
}

std::vector<FormalPolynomial> translation_polynomials_in(int J, const Alphabet& alphabet) {
  PowerSeries<FormalPolynomial> S(J);
  for (int i = 1; i <= J; ++i) S[i] = FormalPolynomial::variable(alphabet, i - 1) * Rational(-1);
  auto E = S.exp();
  std::vector<FormalPolynomial> out;
  out.emplace_back(alphabet);
  for (int j = 1; j <= J; ++j) out.push_back(-E[j]);
  return out;
}

Integer factorial_product(const FormalPolynomial::Exponents& a) {
  Integer r = 1;
  for (int e : a) r *= factorial(e);
  return r;
}

Multiset shifted_union(Multiset k, const Multiset& parts, int shift) {
  for (int j : parts) k.push_back(j + shift);
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

std::vector<Rational> sigma_coefficients(int N) {
  if (N < 1) throw std::invalid_argument("sigma_coefficients needs N >= 1");
  PowerSeries<Rational> A(N);
  for (int k = 0; k <= N; ++k) {
    Rational v(double_factorial(2 * k + 1));
    A[k] = k % 2 == 0 ? v : -v;
  }
  auto L = A.log();
  std::vector<Rational> sigma(static_cast<std::size_t>(N + 1));
  for (int i = 1; i <= N; ++i) sigma[static_cast<std::size_t>(i)] = -L[i];
  return sigma;
}

Alphabet kappa_alphabet(int N) { return indexed_alphabet("kappa", N); }

std::vector<KappaPolynomial> k_polynomials(int N) {
  if (N < 0) throw std::invalid_argument("k_polynomials needs N >= 0");
  return k_polynomials_in(N, kappa_alphabet(std::max(N, 1)));
}

std::vector<FormalPolynomial> translation_polynomials(int J) {
  if (J < 0) throw std::invalid_argument("translation_polynomials needs J >= 0");
  return translation_polynomials_in(J, indexed_alphabet("b", std::max(J, 1)));
}

nlohmann::json KappaPolynomial::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : poly.terms()) {
    nlohmann::json kappa = nlohmann::json::array();
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) kappa.push_back({static_cast<int>(j) + 1, e[j]});
    terms.push_back({{"kappa", kappa}, {"v", c.str()}});
  }
  return {{"m", m}, {"terms", terms}};
}

const FormalPolynomial& KappaIntegrals::p(int j) {
  if (j >= kAlphabetSize) throw std::out_of_range("translation weight beyond supported range");
  if (static_cast<int>(p_.size()) <= j)
    p_ = translation_polynomials_in(std::min(kAlphabetSize - 1, std::max(j, 2 * static_cast<int>(p_.size()))),
                                    shared_b_alphabet());
  return p_[static_cast<std::size_t>(j)];
}

const KappaPolynomial& KappaIntegrals::K(int m) {
  if (m >= kAlphabetSize) throw std::out_of_range("kappa degree beyond supported range");
  if (static_cast<int>(K_.size()) <= m)
    K_ = k_polynomials_in(std::min(kAlphabetSize - 1, std::max(m, 2 * static_cast<int>(K_.size()))),
                          shared_kappa_alphabet());
  return K_[static_cast<std::size_t>(m)];
}

Rational KappaIntegrals::b_coefficient(const Multiset& parts, const FormalPolynomial::Exponents& a) {
  auto key = std::make_pair(parts, a);
  if (auto it = bcoef_.find(key); it != bcoef_.end()) return it->second;
  // Only monomials dividing b^a can contribute; keep the product inside that box.
  FormalPolynomial prod(Rational(1), shared_b_alphabet());
  for (int j : parts) {
    FormalPolynomial next(shared_b_alphabet());
    for (const auto& [e1, c1] : prod.terms()) {
      for (const auto& [e2, c2] : p(j).terms()) {
        FormalPolynomial::Exponents e(std::max(e1.size(), e2.size()), 0);
        bool inside = true;
        for (std::size_t i = 0; i < e.size() && inside; ++i) {
          e[i] = (i < e1.size() ? e1[i] : 0) + (i < e2.size() ? e2[i] : 0);
          inside = e[i] <= (i < a.size() ? a[i] : 0);
        }
        if (inside) next.add_term(std::move(e), c1 * c2);
      }
    }
    prod = std::move(next);
  }
  Rational v = prod.coefficient(a);
  bcoef_.emplace(std::move(key), v);
  return v;
}

Rational KappaIntegrals::kappa_psi(int g, const std::vector<int>& a_in, const Multiset& k) {
  int n = static_cast<int>(k.size());
  if (g < 0 || 2 * g - 2 + n <= 0) throw std::invalid_argument("kappa_psi on an unstable moduli space");
  FormalPolynomial::Exponents a = a_in;
  while (!a.empty() && a.back() == 0) a.pop_back();
  int w = 0, r = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 0) throw std::invalid_argument("negative kappa exponent");
    w += static_cast<int>(j + 1) * a[j];
    r += a[j];
  }
  if (w + total(k) != 3 * g - 3 + n) return Rational();
  if (w == 0) return kw_.correlator(g, k);
  Rational afact(factorial_product(a));
  Rational sum;
  for_each_partition(w, [&](const Multiset& parts) {
    if (static_cast<int>(parts.size()) > r) return;
    Rational c = b_coefficient(parts, a);
    if (c.is_zero()) return;
    sum += c / Rational(automorphisms(parts)) * kw_.correlator(g, shifted_union(k, parts, 1));
  });
  return afact * sum;
}

Rational KappaIntegrals::integrate(int g, const FormalPolynomial& kappa_poly, const Multiset& k) {
  Rational sum;
  for (const auto& [e, c] : kappa_poly.terms()) sum += c * kappa_psi(g, e, k);
  return sum;
}

const std::map<Multiset, Rational>& KappaIntegrals::shift_weights(int m) {
  if (auto it = weights_.find(m); it != weights_.end()) return it->second;
  std::map<Multiset, Rational> w;
  const auto& Km = K(m);
  for_each_partition(m, [&](const Multiset& parts) {
    Rational acc;
    for (const auto& [a, c] : Km.poly.terms())
      acc += c * Rational(factorial_product(a)) * b_coefficient(parts, a);
    if (!acc.is_zero()) w.emplace(parts, acc);
  });
  return weights_.emplace(m, std::move(w)).first->second;
}

Rational KappaIntegrals::zk_via_kappa(int g, const Multiset& k) {
  int n = static_cast<int>(k.size());
  int m = 3 * g - 3 + n - total(k);
  if (m < 0 || 2 * g - 2 + n <= 0) return Rational();
  if (m == 0) return kw_.correlator(g, k);
  Rational sum;
  for (const auto& [parts, w] : shift_weights(m))
    sum += w / Rational(automorphisms(parts)) * kw_.correlator(g, shifted_union(k, parts, 1));
  return sum;
}

Rational KappaIntegrals::zk_via_shift(int g, const Multiset& k_in) {
  Multiset k = k_in;
  std::sort(k.begin(), k.end());
  int n = static_cast<int>(k.size());
  int m = 3 * g - 3 + n - total(k);
  if (m < 0 || 2 * g - 2 + n <= 0) return Rational();
  auto key = std::make_pair(g, k);
  if (auto it = shift_memo_.find(key); it != shift_memo_.end()) return it->second;
  // Each inserted t_j (j >= 2) carries (-1)^j (2j-1)!! and consumes weight j - 1.
  Rational sum;
  for_each_partition(m, [&](const Multiset& parts) {
    Rational c(1);
    for (int p : parts) {
      int j = p + 1;
      Rational cj(double_factorial(2 * j - 1));
      c *= j % 2 == 0 ? cj : -cj;
    }
    sum += c / Rational(automorphisms(parts)) * kw_.correlator(g, shifted_union(k, parts, 1));
  });
  shift_memo_.emplace(std::move(key), sum);
  return sum;
}

Rational ZkOracle::correlator(int g, Multiset k) { return ki_.zk_via_shift(g, std::move(k)); }

Rational bracket_from_zk(ZkOracle& zk, int g, const Multiset& k) {
  Rational sum;
  std::vector<int> j(k.size(), 0);
  while (true) {
    Rational c(1);
    Multiset lowered(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      c /= Rational(power_of_two(j[i])) * Rational(factorial(j[i]));
      lowered[i] = k[i] - j[i];
    }
    sum += c * zk.correlator(g, lowered);
    std::size_t p = 0;
    while (p < k.size() && j[p] == k[p]) j[p++] = 0;
    if (p == k.size()) break;
    ++j[p];
  }
  return sum;
}

namespace {

std::string point_str(int g, const Multiset& k) {
  std::string s = "g=" + std::to_string(g) + " k=(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

// Stable lattice points with s^2-power 1-g+|k| in [lo_offset.., smax].
std::vector<std::pair<int, Multiset>> spin_lattice(const Truncation& t, bool stable_only,
                                                   bool cap_dimension) {
  std::vector<std::pair<int, Multiset>> pts;
  for (int g = 0; g <= t.gmax; ++g) {
    for (int n = 1; n <= t.dmax; ++n) {
      if (stable_only && 2 * g - 2 + n <= 0) continue;
      int hi = t.smax + g - 1;
      if (cap_dimension) hi = std::min(hi, 3 * g - 3 + n);
      for_each_multiset_bounded(n, t.kmax, hi, [&](const Multiset& k) {
        if (total(k) >= g - 1) pts.emplace_back(g, k);
      });
    }
  }
  return pts;
}

}  // namespace

CorrelatorTable zk_correlators(const Truncation& trunc) {
  trunc.validate();
  auto pts = spin_lattice(trunc, true, true);
  auto vals = parallel_map<std::pair<int, Multiset>, Rational>(
      pts, [] { return KappaIntegrals(); },
      [](KappaIntegrals& ki, const std::pair<int, Multiset>& p) {
        Rational a = ki.zk_via_kappa(p.first, p.second);
        Rational b = ki.zk_via_shift(p.first, p.second);
        if (a != b)
          throw RouteDisagreement("zk routes disagree at " + point_str(p.first, p.second) + ": " +
                                  a.str() + " vs " + b.str());
        return a;
      });
  CorrelatorTable t("zk", trunc);
  for (std::size_t i = 0; i < pts.size(); ++i) t.set(pts[i].first, pts[i].second, vals[i]);
  return t;
}

CorrelatorTable bracket_psi_correlators(const Truncation& trunc) {
  trunc.validate();
  auto pts = spin_lattice(trunc, true, false);
  auto vals = parallel_map<std::pair<int, Multiset>, Rational>(
      pts, [] { return ZkOracle(); },
      [](ZkOracle& zk, const std::pair<int, Multiset>& p) {
        return bracket_from_zk(zk, p.first, p.second);
      });

  // Second route: linear change of variables on log Z^K at s = 1.
  GradedSeries fk = zk_correlators(trunc).to_series(Grading::None);
  Substitution sub;
  for (int k = 0; k <= trunc.kmax; ++k) {
    std::vector<SubstitutionTerm> img;
    for (int m = 0; k + m <= trunc.kmax; ++m)
      img.push_back({Rational(1) / (Rational(power_of_two(m)) * Rational(factorial(m))), 0, k + m});
    sub.rules[k] = std::move(img);
  }
  GradedSeries fb = fk.substitute(sub);

  CorrelatorTable t("zk-bracket", trunc);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& [g, k] = pts[i];
    Monomial mono = Monomial::from_multiset(k);
    Rational series_value = fb.coefficient(g - 1, 0, mono) * Rational(mono.automorphisms());
    if (series_value != vals[i])
      throw RouteDisagreement("bracket routes disagree at " + point_str(g, k) + ": " +
                              vals[i].str() + " vs " + series_value.str());
    t.set(g, k, vals[i]);
  }
  return t;
}

GradedSeries zk_free_energy(const Truncation& trunc, bool with_vacuum) {
  GradedSeries f = zk_correlators(trunc).to_series(Grading::Spin);
  if (with_vacuum)
    for (int g = 2; g <= trunc.gmax; ++g)
      f.add(g - 1, 1 - g, Monomial(), euler_characteristic_constant(g));
  return f;
}

Rational vanishing_check(int g, int n, int m, const std::vector<int>& kappa_exponents,
                         const Multiset& psi_in) {
  Multiset psi = psi_in;
  if (psi.empty()) psi.assign(static_cast<std::size_t>(n), 0);
  if (static_cast<int>(psi.size()) != n)
    throw std::invalid_argument("psi exponent list must have one entry per marked point");
  if (m == 3 * g - 3 && n == 0)
    throw ExceptionalPair("(m,n)=(3g-3,0) is the exception to the vanishing of K_m for m > 2g-2+n");
  if (m <= 2 * g - 2 + n)
    throw std::invalid_argument("vanishing applies only for m > 2g-2+n");
  int deg = m + total(psi);
  for (std::size_t j = 0; j < kappa_exponents.size(); ++j)
    deg += static_cast<int>(j + 1) * kappa_exponents[j];
  if (deg != 3 * g - 3 + n)
    throw std::invalid_argument("companion monomial does not complete the dimension");

  KappaIntegrals ki;
  auto Km = k_polynomials_in(std::max(m, 1), shared_kappa_alphabet())[static_cast<std::size_t>(m)];
  FormalPolynomial companion =
      FormalPolynomial::monomial(shared_kappa_alphabet(), kappa_exponents, Rational(1));
  return ki.integrate(g, Km.poly * companion, psi);
}

}  // namespace skdv
