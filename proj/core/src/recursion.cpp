#include "skdv/recursion.hpp"

#include <stdexcept>

namespace skdv {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::pow;

bool allowed(int g, int n, const RecursionConvention& conv) {
  if (g < 0 || n < 1) return false;
  if (g == 0 && n == 1) return conv.include_V01;
  if (g == 0 && n == 2) return conv.include_V02;
  return true;
}

// Coefficients of the first `free` slots' L^2-exponents at order s^{2a},
// the remaining slots evaluated at `fixed`.
std::map<std::vector<int>, Real> partial(const VolumePolynomial& v, int a, int free,
                                         const std::vector<Real>& fixed, const Real& pi2) {
  std::map<std::vector<int>, Real> out;
  for (const auto& [k, c] : v.order(a)) {
    Real x = c.evaluate<Real>([&](int) { return pi2; });
    for (std::size_t i = free; i < k.size(); ++i) x *= pow(fixed[i - free], 2 * k[i]);
    std::vector<int> head(k.begin(), k.begin() + free);
    out[head] += x;
  }
  return out;
}

}  // namespace

std::string RecursionConvention::str() const {
  return std::string("V01=") + (include_V01 ? "on" : "off") + " V02=" + (include_V02 ? "on" : "off") +
         " scale=" + (scale == KernelScale::Unit ? "1" : "1/(2pi)");
}

nlohmann::json RecursionConvention::to_json() const {
  return {{"include_V01", include_V01},
          {"include_V02", include_V02},
          {"kernel_scale", scale == KernelScale::Unit ? "1" : "1/(2pi)"}};
}

std::vector<RecursionConvention> all_conventions() {
  std::vector<RecursionConvention> out;
  for (KernelScale sc : {KernelScale::InverseTwoPi, KernelScale::Unit})
    for (bool v1 : {true, false})
      for (bool v2 : {true, false}) out.push_back({v1, v2, sc});
  return out;
}

Real OrderResidual::residual() const { return abs(lhs - rhs); }

Real RecursionResult::max_residual() const {
  Real m = 0;
  for (const auto& o : orders) m = std::max(m, o.residual());
  return m;
}

Real RecursionResult::residual_at(const Real& s) const {
  Real acc = 0;
  for (const auto& o : orders) acc += pow(s, 2 * o.s2) * (o.lhs - o.rhs);
  return abs(acc);
}

nlohmann::json RecursionResult::to_json() const {
  nlohmann::json ls = nlohmann::json::array();
  for (const auto& x : L) ls.push_back(x.str(20));
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& o : orders)
    rows.push_back({{"s2", o.s2}, {"lhs", o.lhs.str(25)}, {"rhs", o.rhs.str(25)},
                    {"residual", o.residual().str(6)}});
  return {{"g", g}, {"n", n}, {"L", ls}, {"convention", convention.to_json()},
          {"orders", rows}, {"max_residual", max_residual().str(6)}};
}

const VolumePolynomial& RecursionChecker::volume(int g, int n) {
  auto key = std::make_pair(g, n);
  auto it = volumes_.find(key);
  if (it == volumes_.end()) it = volumes_.emplace(key, volume_polynomial(tc_, g, n, smax_)).first;
  return it->second;
}

RecursionResult RecursionChecker::check(int g, int n, const std::vector<Real>& L,
                                        const RecursionConvention& conv) {
  if (g < 0 || n < 1) throw std::invalid_argument("recursion needs g >= 0 and n >= 1");
  if (static_cast<int>(L.size()) != n) throw std::invalid_argument("need one length per boundary");
  const Real pi = real_pi();
  const Real pi2 = pi * pi;
  const Real scale = conv.scale == KernelScale::Unit ? Real(1) : 1 / (2 * pi);
  const Real& L1 = L[0];
  std::vector<Real> K(L.begin() + 1, L.end());
  const int nk = n - 1;

  RecursionResult res{g, n, L, conv, {}};
  for (int a = 0; a <= smax_; ++a) {
    OrderResidual o{a, 0, 0};
    for (const auto& [k, c] : volume(g, n).order(a)) {
      Real x = c.evaluate<Real>([&](int) { return pi2; });
      for (int i = 0; i < n; ++i) x *= pow(L[i], 2 * k[i]);
      o.lhs += x;
    }
    o.lhs *= L1;

    // P_{g,n+1} as a polynomial in x^2, y^2.
    std::map<std::pair<int, int>, Real> P;
    if (g >= 1 && allowed(g - 1, n + 1, conv))
      for (const auto& [e, c] : partial(volume(g - 1, n + 1), a, 2, K, pi2)) P[{e[0], e[1]}] += c;
    for (int g1 = 0; g1 <= g; ++g1)
      for (int mask = 0; mask < (1 << nk); ++mask) {
        std::vector<Real> I, J;
        for (int i = 0; i < nk; ++i) ((mask >> i) & 1 ? I : J).push_back(K[i]);
        int n1 = static_cast<int>(I.size()) + 1, n2 = static_cast<int>(J.size()) + 1;
        if (!allowed(g1, n1, conv) || !allowed(g - g1, n2, conv)) continue;
        for (int a1 = 0; a1 <= a; ++a1) {
          auto p1 = partial(volume(g1, n1), a1, 1, I, pi2);
          if (p1.empty()) continue;
          auto p2 = partial(volume(g - g1, n2), a - a1, 1, J, pi2);
          for (const auto& [e1, c1] : p1)
            for (const auto& [e2, c2] : p2) P[{e1[0], e2[0]}] += c1 * c2;
        }
      }
    Real rhs = 0;
    for (const auto& [pq, c] : P) rhs += c * d_moment(L1, pq.first, pq.second, opt_) / 2;

    if (allowed(g, n - 1, conv))
      for (int j = 1; j < n; ++j) {
        std::vector<Real> rest;
        for (int i = 1; i < n; ++i)
          if (i != j) rest.push_back(L[i]);
        for (const auto& [e, c] : partial(volume(g, n - 1), a, 1, rest, pi2))
          rhs += c * r_moment(L1, L[j], e[0], opt_);
      }
    rhs *= scale;

    if (n == 1 && g == 0 && a == 1) rhs += L1 / 2;
    if (n == 1 && g == 1 && a == 0) rhs += L1 / 8;
    o.rhs = rhs;
    res.orders.push_back(o);
  }
  return res;
}

RecursionResult recursion_orders(int g, int n, const std::vector<Real>& L,
                                 const RecursionConvention& conv, int smax) {
  RecursionChecker checker(smax);
  return checker.check(g, n, L, conv);
}

Real recursion_residual(int g, int n, const Real& s, const std::vector<Real>& L,
                        const RecursionConvention& conv, int smax) {
  return recursion_orders(g, n, L, conv, smax).residual_at(s);
}

}  // namespace skdv
