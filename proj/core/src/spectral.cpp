#include "skdv/spectral.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "skdv/combinatorics.hpp"
#include "skdv/spin.hpp"
#include "skdv/virasoro.hpp"
#include "skdv/volume.hpp"

namespace skdv {

namespace {

FormalPolynomial constant(const Rational& c) { return FormalPolynomial(c, spectral_alphabet()); }
FormalPolynomial zero() { return FormalPolynomial(spectral_alphabet()); }

Rational odd_double_factorial(int k) { return Rational(double_factorial(2 * k + 1)); }

// Largest pole order 2(3g-3+n)+2 of any leg of W_{g,n}.
int pole_bound(int g, int n) { return 2 * (3 * g - 3 + n) + 2; }

struct QTerm {
  int zpow;
  std::vector<int> legs;  // pole orders on the remaining legs
  FormalPolynomial c;
};

using QMap = std::map<std::pair<int, std::vector<int>>, FormalPolynomial>;

void accumulate(QMap& q, int zpow, const std::vector<int>& legs, const FormalPolynomial& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(zpow, legs);
  auto it = q.find(key);
  if (it == q.end()) {
    q.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) q.erase(it);
}

}  // namespace

std::string curve_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::Airy: return "airy";
    case CurveKind::Bessel: return "bessel";
    case CurveKind::CK: return "ck";
    case CurveKind::CNS: return "cns";
  }
  return "?";
}

CurveKind parse_curve(const std::string& name) {
  if (name == "airy") return CurveKind::Airy;
  if (name == "bessel") return CurveKind::Bessel;
  if (name == "ck") return CurveKind::CK;
  if (name == "cns") return CurveKind::CNS;
  throw std::invalid_argument("unknown curve '" + name + "' (airy, bessel, ck, cns)");
}

int SpectralCurve::default_order(CurveKind kind, int level) {
  if (kind == CurveKind::CK) return 4;
  return 6 * std::max(level, 1) + 8;
}

SpectralCurve SpectralCurve::make(CurveKind kind, int order) {
  if (order < 1) throw InsufficientOrder("series order must be positive");
  SpectralCurve c{kind, order, {}, {}};
  switch (kind) {
    case CurveKind::Airy:
      c.y = LaurentSeries::monomial(1, constant(1));
      c.inverse_dy = LaurentSeries::monomial(-1, constant(Rational(1, 2)));
      break;
    case CurveKind::Bessel:
      c.y = LaurentSeries::monomial(-1, constant(1));
      c.inverse_dy = LaurentSeries::monomial(1, constant(Rational(1, 2)));
      break;
    case CurveKind::CK: {
      if (order < 2) throw InsufficientOrder("ck needs series order >= 2");
      // y = sum_{j<N} (-1)^j s^{2j} z^{-2j-1}; (y(z)-y(-z))/2 = z^{-1} a(u), u = s^2 z^{-2}
      std::vector<FormalPolynomial> a;
      for (int j = 0; j < order; ++j) {
        FormalPolynomial t = s2_power(j) * Rational(j % 2 == 0 ? 1 : -1);
        c.y.add(-2 * j - 1, t);
        a.push_back(t);
      }
      std::vector<FormalPolynomial> b = invert_unit_series(a, order - 1);
      for (int i = 0; i < static_cast<int>(b.size()); ++i)
        c.inverse_dy.add(1 - 2 * i, b[i] * Rational(1, 2));
      break;
    }
    case CurveKind::CNS: {
      // cos(2 pi z) = sum_j (-1)^j 4^j pi^{2j} z^{2j}/(2j)!
      std::vector<FormalPolynomial> a;
      for (int j = 0; j <= order; ++j) {
        Rational r(power_of_two(2 * j), factorial(2 * j));
        FormalPolynomial t = pi2_power(j) * (j % 2 == 0 ? r : -r);
        c.y.add(2 * j - 1, t);
        a.push_back(t);
      }
      std::vector<FormalPolynomial> b = invert_unit_series(a, order);
      for (int i = 0; i <= order; ++i) c.inverse_dy.add(2 * i + 1, b[i] * Rational(1, 2));
      break;
    }
  }
  return c;
}

void OddDifferentialTable::set(int g, std::vector<int> k, const FormalPolynomial& v) {
  Key key{g, std::move(k)};
  if (v.is_zero()) entries_.erase(key);
  else entries_[key] = v;
}

FormalPolynomial OddDifferentialTable::get(int g, const std::vector<int>& k) const {
  auto it = entries_.find({g, k});
  return it == entries_.end() ? zero() : it->second;
}

std::map<std::vector<int>, FormalPolynomial> OddDifferentialTable::slice(int g, int n) const {
  std::map<std::vector<int>, FormalPolynomial> out;
  for (const auto& [key, v] : entries_)
    if (key.first == g && static_cast<int>(key.second.size()) == n) out.emplace(key.second, v);
  return out;
}

namespace {

nlohmann::json poly_json(const FormalPolynomial& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [e, v] : p.terms()) {
    int s = e.size() > 0 ? e[0] : 0, q = e.size() > 1 ? e[1] : 0;
    out.push_back({{"s2", s}, {"pi2", q}, {"v", v.str()}});
  }
  return out;
}

}  // namespace

nlohmann::json OddDifferentialTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [key, v] : entries_)
    rows.push_back({{"g", key.first}, {"k", key.second}, {"v", poly_json(v)}});
  return {{"engine", engine_}, {"entries", rows}};
}

std::string OddDifferentialTable::to_csv() const {
  std::ostringstream os;
  os << "g,k,v\n";
  for (const auto& [key, v] : entries_) {
    os << key.first << ",";
    for (std::size_t i = 0; i < key.second.size(); ++i) os << (i ? ";" : "") << key.second[i];
    os << "," << v.str() << "\n";
  }
  return os.str();
}

TopologicalRecursion::TopologicalRecursion(SpectralCurve curve) : curve_(std::move(curve)) {}

int TopologicalRecursion::kernel_sign() {
  static const int sign = [] {
    TopologicalRecursion tr(SpectralCurve::make(CurveKind::Airy, 1));
    // Unsigned evaluation of the airy (0,3) coefficient.
    RawCorrelator w = tr.compute(0, 3);
    Rational c = w.at({2, 2, 2}).constant_term();
    return c.sign();
  }();
  return sign;
}

const RawCorrelator& TopologicalRecursion::raw(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw std::invalid_argument("TR needs 2g-2+n > 0");
  auto key = std::make_pair(g, n);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  RawCorrelator w = compute(g, n);
  if (kernel_sign() < 0)
    for (auto& [p, c] : w) c = -c;
  return memo_.emplace(key, std::move(w)).first->second;
}

RawCorrelator TopologicalRecursion::compute(int g, int n) {
  const int nl = n - 1;
  // Only Q terms with z-power <= 0 can meet 1/(y(z)-y(-z)) >= z^{-1} in the residue;
  // W_{0,2} is expanded far enough to pair with the deepest pole of the other factor.
  const int M = pole_bound(g, n + 1) + 2;
  // Factor terms of W_{g',|I|+1}(sign*z, z_I) embedded on the nl remaining legs.
  auto factor = [&](int gp, const std::vector<int>& I, int sign) {
    std::vector<QTerm> out;
    if (gp == 0 && I.size() == 1) {
      for (int m = 0; m <= M; ++m) {
        std::vector<int> legs(nl, 0);
        legs[I[0]] = m + 2;
        Rational c(m + 1);
        if (sign < 0 && m % 2 == 1) c = -c;
        out.push_back({m, legs, constant(c)});
      }
      return out;
    }
    for (const auto& [p, c] : raw(gp, static_cast<int>(I.size()) + 1)) {
      std::vector<int> legs(nl, 0);
      for (std::size_t i = 0; i < I.size(); ++i) legs[I[i]] = p[i + 1];
      out.push_back({-p[0], legs, (sign < 0 && p[0] % 2 == 1) ? -c : c});
    }
    return out;
  };

  QMap q;
  if (g >= 1) {
    if (g == 1 && n == 1) {
      // W_{0,2}(z,-z) = 1/(4 z^2)
      accumulate(q, -2, {}, constant(Rational(1, 4)));
    } else {
      for (const auto& [p, c] : raw(g - 1, n + 1)) {
        std::vector<int> legs(p.begin() + 2, p.end());
        accumulate(q, -p[0] - p[1], legs, p[1] % 2 == 1 ? -c : c);
      }
    }
  }
  for (int g1 = 0; g1 <= g; ++g1)
    for (int mask = 0; mask < (1 << nl); ++mask) {
      std::vector<int> I, J;
      for (int i = 0; i < nl; ++i) ((mask >> i) & 1 ? I : J).push_back(i);
      int g2 = g - g1;
      // omega_{0,1} excluded
      if ((g1 == 0 && I.empty()) || (g2 == 0 && J.empty())) continue;
      auto a = factor(g1, I, 1);
      auto b = factor(g2, J, -1);
      for (const auto& ta : a)
        for (const auto& tb : b) {
          int zp = ta.zpow + tb.zpow;
          if (zp > 0) continue;
          std::vector<int> legs(nl);
          for (int i = 0; i < nl; ++i) legs[i] = ta.legs[i] + tb.legs[i];
          accumulate(q, zp, legs, ta.c * tb.c);
        }
    }

  const LaurentSeries& G = curve_.inverse_dy;
  if (curve_.kind == CurveKind::CNS && !q.empty()) {
    int qmin = q.begin()->first.first;
    if (-1 - qmin > G.max_power())
      throw InsufficientOrder("cns series order " + std::to_string(curve_.order) + " too small for (" +
                              std::to_string(g) + "," + std::to_string(n) + ")");
  }
  // W(z_1, ...) = sum_j z_1^{-2j-2} [z^{-1}] z^{2j} G(z) Q(z)
  RawCorrelator w;
  for (const auto& [key, c] : q) {
    int qp = key.first;
    for (const auto& [gp, gc] : G.terms()) {
      int twoj = -1 - gp - qp;
      if (twoj < 0 || twoj % 2 != 0) continue;
      std::vector<int> p;
      p.push_back(twoj + 2);
      p.insert(p.end(), key.second.begin(), key.second.end());
      FormalPolynomial v = c * gc;
      auto it = w.find(p);
      if (it == w.end()) w.emplace(p, v);
      else it->second += v;
    }
  }
  for (auto it = w.begin(); it != w.end();) {
    if (it->second.is_zero()) it = w.erase(it);
    else {
      for (int p : it->first)
        if (p < 2 || p % 2 != 0)
          throw std::logic_error("TR produced a term that is not an odd differential");
      ++it;
    }
  }
  return w;
}

OddDifferentialTable TopologicalRecursion::table(int gmax, int nmax) {
  OddDifferentialTable t("tr-" + curve_name(curve_.kind));
  for (int g = 0; g <= gmax; ++g)
    for (int n = 1; n <= nmax; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      for (const auto& [p, c] : raw(g, n)) {
        std::vector<int> k;
        Rational norm(1);
        for (int x : p) {
          k.push_back((x - 2) / 2);
          norm *= odd_double_factorial((x - 2) / 2);
        }
        t.set(g, k, c * (Rational(1) / norm));
      }
    }
  return t;
}

OddDifferentialTable tr_correlators(const SpectralCurve& curve, int gmax, int nmax) {
  TopologicalRecursion tr(curve);
  return tr.table(gmax, nmax);
}

OddDifferentialTable tr_correlators(CurveKind kind, int gmax, int nmax) {
  return tr_correlators(SpectralCurve::make(kind, SpectralCurve::default_order(kind, 2 * gmax - 2 + nmax)),
                        gmax, nmax);
}

nlohmann::json TableComparison::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : mismatches) rows.push_back({{"g", m.g}, {"k", m.k}, {"lhs", m.lhs}, {"rhs", m.rhs}});
  return {{"what", what}, {"compared", compared}, {"nonzero", nonzero}, {"mismatches", rows}, {"ok", ok()}};
}

TableComparison compare_tables(const OddDifferentialTable& a, const OddDifferentialTable& b,
                               const std::string& what) {
  TableComparison r;
  r.what = what;
  std::set<OddDifferentialTable::Key> keys;
  for (const auto& [k, v] : a.entries()) keys.insert(k);
  for (const auto& [k, v] : b.entries()) keys.insert(k);
  for (const auto& key : keys) {
    FormalPolynomial x = a.get(key.first, key.second), y = b.get(key.first, key.second);
    ++r.compared;
    if (!x.is_zero()) ++r.nonzero;
    if (!(x == y)) r.mismatches.push_back({key.first, key.second, x.str(), y.str()});
  }
  return r;
}

OddDifferentialTable reference_table(CurveKind kind, int gmax, int nmax) {
  if (kind == CurveKind::CNS)
    throw std::invalid_argument("cns has no correlator table; use cns_laplace_check");
  OddDifferentialTable t(kind == CurveKind::Airy ? "kw" : kind == CurveKind::Bessel ? "theta" : "zk-graded");
  CorrelatorSolver kw(Model::KW), bgw(Model::gBGW);
  ZkOracle zk;
  for (int g = 0; g <= gmax; ++g)
    for (int n = 1; n <= nmax; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      int dim = 3 * g - 3 + n;
      for_each_tuple(n, dim, dim, [&](const std::vector<int>& k) {
        int ks = 0;
        for (int x : k) ks += x;
        Multiset m(k.begin(), k.end());
        std::sort(m.begin(), m.end());
        Rational v;
        FormalPolynomial p;
        switch (kind) {
          case CurveKind::Airy:
            p = constant(kw.correlator(g, m));
            break;
          case CurveKind::Bessel:
            p = ks == g - 1 ? constant(bgw.correlator(g, m)) : zero();
            break;
          default: {
            int a = 1 - g + ks;
            p = a < 0 ? zero() : s2_power(a) * zk.correlator(g, m);
          }
        }
        t.set(g, k, p);
      });
    }
  return t;
}

TableComparison compare_to_tables(CurveKind kind, const OddDifferentialTable& tr, int gmax, int nmax) {
  return compare_tables(tr, reference_table(kind, gmax, nmax),
                        curve_name(kind) + " vs " + reference_table(kind, 0, 1).engine());
}

OddDifferentialTable eta_reexpand(const OddDifferentialTable& ck, int kmax) {
  OddDifferentialTable out("tr-ck-eta");
  std::map<OddDifferentialTable::Key, FormalPolynomial> acc;
  for (const auto& [key, c] : ck.entries()) {
    const auto& k = key.second;
    int n = static_cast<int>(k.size());
    int room = 0;
    for (int x : k) {
      if (x > kmax) goto next;
      room = std::max(room, kmax - x);
    }
    for_each_tuple(n, room, n * room, [&](const std::vector<int>& j) {
      std::vector<int> kk(n);
      Rational w(1);
      int js = 0;
      for (int i = 0; i < n; ++i) {
        kk[i] = k[i] + j[i];
        if (kk[i] > kmax) return;
        w /= Rational(power_of_two(j[i]) * factorial(j[i]));
        js += j[i];
      }
      auto& slot = acc[{key.first, kk}];
      if (slot.alphabet() == nullptr) slot = zero();
      slot += c * s2_power(js) * w;
    });
  next:;
  }
  for (const auto& [key, v] : acc) out.set(key.first, key.second, v);
  return out;
}

OddDifferentialTable spin_reference(int gmax, int nmax, int kmax) {
  OddDifferentialTable t("spin-graded");
  SpinOracle spin;
  for (int g = 0; g <= gmax; ++g)
    for (int n = 1; n <= nmax; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      for_each_tuple(n, kmax, n * kmax, [&](const std::vector<int>& k) {
        int ks = 0;
        for (int x : k) ks += x;
        int a = 1 - g + ks;
        if (a < 0) return;
        Multiset m(k.begin(), k.end());
        std::sort(m.begin(), m.end());
        t.set(g, k, s2_power(a) * spin.correlator(g, m));
      });
    }
  return t;
}

OddDifferentialTable at_s_zero(const OddDifferentialTable& t) {
  OddDifferentialTable out(t.engine() + "@s=0");
  for (const auto& [key, v] : t.entries()) {
    FormalPolynomial p = zero();
    for (const auto& [e, c] : v.terms())
      if (e.empty() || e[0] == 0) p.add_term(e, c);
    out.set(key.first, key.second, p);
  }
  return out;
}

nlohmann::json LaplaceReport::to_json() const {
  return {{"g", g}, {"n", n}, {"leg_sign", leg_sign}, {"comparison", comparison.to_json()}};
}

LaplaceReport cns_laplace_check(int g, int n, int leg_sign) {
  if (leg_sign != 1 && leg_sign != -1) throw std::invalid_argument("leg sign must be +1 or -1");
  LaplaceReport r;
  r.g = g;
  r.n = n;
  r.leg_sign = leg_sign;
  SpectralCurve curve = SpectralCurve::make(CurveKind::CNS, SpectralCurve::default_order(CurveKind::CNS, 2 * g - 2 + n));
  TopologicalRecursion tr(curve);
  OddDifferentialTable lhs("tr-cns");
  for (const auto& [p, c] : tr.raw(g, n)) {
    std::vector<int> k;
    for (int x : p) k.push_back((x - 2) / 2);
    lhs.set(g, k, c);
  }
  // d/dz Laplace{L^{2k}} = -(2k+1)! z^{-2k-2}; raw pole coefficients on both sides.
  OddDifferentialTable rhs("laplace");
  VolumePolynomial v = volume_polynomial(g, n, 0);
  for (const auto& [k, c] : v.order(0)) {
    Rational f(1);
    for (int x : k) f *= Rational(factorial(2 * x + 1));
    // each leg: leg_sign * (-(2k+1)!)
    if (n % 2 == 1 && leg_sign > 0) f = -f;
    FormalPolynomial p = zero();
    for (const auto& [e, val] : c.terms()) p += pi2_power(e.empty() ? 0 : e[0]) * val;
    rhs.set(g, k, p * f);
  }
  r.comparison = compare_tables(lhs, rhs, "cns vs Laplace of V(0,L)");
  return r;
}

int calibrate_laplace_sign() {
  if (cns_laplace_check(1, 1, -1).comparison.ok()) return -1;
  if (cns_laplace_check(1, 1, 1).comparison.ok()) return 1;
  throw std::logic_error("no leg sign matches cns (1,1)");
}

StabilityReport stability_check(CurveKind kind, int gmax, int nmax, int order) {
  StabilityReport r{kind, order, 2 * order, {}};
  auto a = tr_correlators(SpectralCurve::make(kind, order), gmax, nmax);
  auto b = tr_correlators(SpectralCurve::make(kind, 2 * order), gmax, nmax);
  r.comparison = compare_tables(a, b, curve_name(kind) + " order " + std::to_string(order) + " vs " +
                                          std::to_string(2 * order));
  return r;
}

std::vector<OddDifferentialTable::Key> symmetry_violations(const OddDifferentialTable& t) {
  std::vector<OddDifferentialTable::Key> bad;
  for (const auto& [key, v] : t.entries()) {
    std::vector<int> k = key.second;
    std::sort(k.begin(), k.end());
    do {
      if (!(t.get(key.first, k) == v)) {
        bad.push_back(key);
        break;
      }
    } while (std::next_permutation(k.begin(), k.end()));
  }
  return bad;
}

}  // namespace skdv
