#include "skdv/virasoro.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "skdv/parallel.hpp"

namespace skdv {

namespace {
std::atomic<int> g_threads{1};
}  // namespace

int default_threads() { return g_threads.load(); }
void set_default_threads(int n) { g_threads.store(n < 1 ? 1 : n); }

Rational VirasoroSpec::quadratic(int i, int j) {
  return Rational(double_factorial(2 * i + 1) * double_factorial(2 * j + 1), Integer(2));
}

Rational VirasoroSpec::linear(int i, int m) {
  return Rational(double_factorial(2 * i + 2 * m + 1), double_factorial(2 * i - 1));
}

void VirasoroSpec::check_m(int m) const {
  if (m < m_min || m > m_max)
    throw std::out_of_range("Virasoro index m=" + std::to_string(m) + " outside [" +
                            std::to_string(m_min) + ", " + std::to_string(m_max) + "]");
}

namespace {

std::string describe(int g, const Multiset& k) {
  std::string s = "g=" + std::to_string(g) + " k=(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

Multiset with(Multiset k, std::initializer_list<int> extra) {
  k.insert(k.end(), extra);
  std::sort(k.begin(), k.end());
  return k;
}

// Distinct values with multiplicities, ascending.
std::vector<std::pair<int, int>> histogram(const Multiset& k) {
  std::vector<std::pair<int, int>> h;
  for (int x : k) {
    if (!h.empty() && h.back().first == x)
      ++h.back().second;
    else
      h.emplace_back(x, 1);
  }
  return h;
}

// Every sub-multiset K1 of K with the number of labelled subsets realising it.
void for_each_split(const Multiset& k,
                    const std::function<void(const Multiset&, const Multiset&, const Integer&)>& fn) {
  auto h = histogram(k);
  std::vector<int> take(h.size(), 0);
  while (true) {
    Multiset a, b;
    Integer w = 1;
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (int r = 0; r < take[i]; ++r) a.push_back(h[i].first);
      for (int r = take[i]; r < h[i].second; ++r) b.push_back(h[i].first);
      w *= binomial(h[i].second, take[i]);
    }
    fn(a, b, w);
    std::size_t p = 0;
    while (p < h.size() && take[p] == h[p].second) take[p++] = 0;
    if (p == h.size()) break;
    ++take[p];
  }
}

}  // namespace

ConstraintInconsistency::ConstraintInconsistency(int g, const Multiset& k,
                                                 const std::string& detail)
    : std::runtime_error("Virasoro constraints inconsistent at " + describe(g, k) + ": " + detail) {}

std::size_t CorrelatorSolver::canonical_position(const Multiset& k) const {
  auto pos = [&](int v) -> std::ptrdiff_t {
    auto it = std::find(k.begin(), k.end(), v);
    return it == k.end() ? -1 : it - k.begin();
  };
  if (auto p = pos(0); p >= 0) return static_cast<std::size_t>(p);
  if (spec_.model == Model::KW)
    if (auto p = pos(1); p >= 0) return static_cast<std::size_t>(p);
  return k.size() - 1;
}

Rational CorrelatorSolver::correlator(int g, Multiset k) {
  if (g < 0 || k.empty()) return Rational();
  std::sort(k.begin(), k.end());
  int n = static_cast<int>(k.size());
  if (spec_.model == Model::KW) {
    if (2 * g - 2 + n <= 0 || total(k) != 3 * g - 3 + n) return Rational();
  }
  auto key = std::make_pair(g, k);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Rational v = solve_with(g, k, canonical_position(k));
  memo_.emplace(std::move(key), v);
  return v;
}

Rational CorrelatorSolver::solve_with(int g, const Multiset& target, std::size_t pos) {
  int c = target[pos];
  int m = c - spec_.offset();
  Multiset rest = target;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));

  Rational rhs;
  for (int i = 0; i <= m - 1; ++i) {
    int j = m - 1 - i;
    Rational q = VirasoroSpec::quadratic(i, j);
    Rational acc = correlator(g - 1, with(rest, {i, j}));
    for_each_split(rest, [&](const Multiset& a, const Multiset& b, const Integer& w) {
      for (int g1 = 0; g1 <= g; ++g1) {
        Rational left = correlator(g1, with(a, {i}));
        if (left.is_zero()) continue;
        acc += Rational(w) * left * correlator(g - g1, with(b, {j}));
      }
    });
    rhs += q * acc;
  }
  for (auto [v, e] : histogram(rest)) {
    if (v + m < 0) continue;
    Multiset moved = rest;
    moved.erase(std::find(moved.begin(), moved.end(), v));
    moved.push_back(v + m);
    rhs += Rational(e) * VirasoroSpec::linear(v, m) * correlator(g, moved);
  }
  if (m == 0 && g == 1 && rest.empty()) rhs += Rational(1, 8);
  if (spec_.model == Model::KW && m == -1 && g == 0 && rest == Multiset{0, 0}) rhs += Rational(1);
  if (spec_.model == Model::gBGW && m == 0 && g == 0 && rest.empty()) rhs += Rational(1, 2);
  return rhs / Rational(double_factorial(2 * c + 1));
}

void CorrelatorSolver::check_consistency(int g, Multiset k) {
  std::sort(k.begin(), k.end());
  if (k.empty()) return;
  Rational ref = correlator(g, k);
  for (std::size_t p = 0; p < k.size(); ++p) {
    if (p > 0 && k[p] == k[p - 1]) continue;
    if (k[p] - spec_.offset() < spec_.m_min) continue;
    Rational alt = solve_with(g, k, p);
    if (alt != ref)
      throw ConstraintInconsistency(g, k, "insertion t_" + std::to_string(k[p]) + " gives " +
                                              alt.str() + ", expected " + ref.str());
  }
}

namespace {

CorrelatorTable build_table(Model model, const Truncation& trunc, bool check) {
  trunc.validate();
  std::vector<std::pair<int, Multiset>> points;
  for (int g = 0; g <= trunc.gmax; ++g) {
    for (int n = 1; n <= trunc.dmax; ++n) {
      int lo, hi;
      if (model == Model::KW) {
        if (2 * g - 2 + n <= 0) continue;
        lo = hi = 3 * g - 3 + n;
      } else {
        lo = g - 1;
        hi = trunc.smax + g - 1;
      }
      for_each_multiset_bounded(n, trunc.kmax, hi, [&](const Multiset& k) {
        if (total(k) >= lo) points.emplace_back(g, k);
      });
    }
  }
  auto values = parallel_map<std::pair<int, Multiset>, Rational>(
      points, [model] { return CorrelatorSolver(model); },
      [check](CorrelatorSolver& s, const std::pair<int, Multiset>& p) {
        if (check) s.check_consistency(p.first, p.second);
        return s.correlator(p.first, p.second);
      });
  CorrelatorTable t(model == Model::KW ? "kw" : "bgw", trunc);
  for (std::size_t i = 0; i < points.size(); ++i) t.set(points[i].first, points[i].second, values[i]);
  return t;
}

}  // namespace

CorrelatorTable kw_correlators(const Truncation& trunc, bool check) {
  return build_table(Model::KW, trunc, check);
}

CorrelatorTable bgw_correlators(const Truncation& trunc, bool check) {
  return build_table(Model::gBGW, trunc, check);
}

GradedSeries kw_free_energy(const Truncation& trunc) {
  return kw_correlators(trunc).to_series(Grading::None);
}

GradedSeries bgw_free_energy(const Truncation& trunc) {
  return bgw_correlators(trunc).to_series(Grading::Spin);
}

Truncation virasoro_certified_region(const Truncation& trunc, const VirasoroSpec& spec, int m) {
  spec.check_m(m);
  int c = m + spec.offset();
  Truncation r = trunc;
  r.kmax = trunc.kmax - std::max(m, 0);
  r.dmax = trunc.dmax - (m >= 1 ? 2 : 1);
  if (c > trunc.kmax || r.kmax < 0 || r.dmax < 0)
    throw std::invalid_argument("truncation too small to certify the m=" + std::to_string(m) +
                                " constraint");
  return r;
}

GradedSeries apply_virasoro_oracle(const GradedSeries& log_z, const VirasoroSpec& spec, int m,
                                   const std::vector<Rational>& t_shift) {
  Truncation region = virasoro_certified_region(log_z.truncation(), spec, m);
  const Truncation& t = log_z.truncation();
  int c = m + spec.offset();

  GradedSeries res = log_z.derive(c) * Rational(double_factorial(2 * c + 1));
  for (int i = 0; i <= m - 1; ++i) {
    int j = m - 1 - i;
    GradedSeries di = log_z.derive(i);
    GradedSeries dj = log_z.derive(j);
    GradedSeries quad = di.derive(j) + di * dj;
    res -= quad.shifted(1, 0) * VirasoroSpec::quadratic(i, j);
  }
  for (int i = std::max(0, -m); i + m <= t.kmax; ++i) {
    GradedSeries ti(t);
    ti.add(0, 0, Monomial::variable(i), Rational(1));
    if (i < static_cast<int>(t_shift.size())) ti.add(0, 0, Monomial(), -t_shift[i]);
    res -= (ti * log_z.derive(i + m)) * VirasoroSpec::linear(i, m);
  }
  GradedSeries constants(t);
  if (m == 0) constants.add(0, 0, Monomial(), Rational(1, 8));
  if (spec.model == Model::KW && m == -1) constants.add(-1, 0, Monomial::variable(0, 2), Rational(1, 2));
  if (spec.model == Model::gBGW && m == 0) constants.add(-1, 1, Monomial(), Rational(1, 2));
  res -= constants;
  return res.restricted(region);
}

GradedSeries check_homogeneity(const GradedSeries& log_z) {
  const Truncation& t = log_z.truncation();
  if (t.dmax < 1) throw std::invalid_argument("truncation too small for the homogeneity check");
  GradedSeries res = log_z.derive(0);
  for (int k = 0; k <= t.kmax; ++k) {
    GradedSeries tk(t);
    tk.add(0, 0, Monomial::variable(k), Rational(2 * k + 1));
    res -= tk * log_z.derive(k);
  }
  GradedSeries constants(t);
  constants.add(-1, 1, Monomial(), Rational(1, 2));
  constants.add(0, 0, Monomial(), Rational(1, 8));
  res -= constants;
  Truncation region = t;
  region.dmax = t.dmax - 1;
  return res.restricted(region);
}

KdvResidual kdv_residual(const GradedSeries& log_z) {
  const Truncation& t = log_z.truncation();
  if (t.dmax < 5 || t.kmax < 1)
    throw std::invalid_argument("truncation too small to certify any KdV order (need dmax >= 5)");
  GradedSeries f2 = log_z.derive(0).derive(0);
  GradedSeries f3 = f2.derive(0);
  GradedSeries f5 = f3.derive(0).derive(0);
  GradedSeries res = f2.derive(1) - (f2 * f3).shifted(1, 0) - f5.shifted(1, 0) * Rational(1, 12);
  Truncation region = t;
  region.dmax = t.dmax - 5;
  return {res.restricted(region), region.dmax};
}

}  // namespace skdv
