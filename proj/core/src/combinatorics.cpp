#include "skdv/combinatorics.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace skdv {

Integer double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double factorial of n < -1");
  Integer r = 1;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational bernoulli(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("bernoulli: n must be even and >= 2");
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1), Rational(-1, 2)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    Rational acc;
    for (int k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * cache[k];
    cache.push_back(-acc / Rational(m + 1));
  }
  return cache[n];
}

Rational euler_characteristic_constant(int g) {
  if (g < 2) throw std::invalid_argument("euler characteristic constant needs g >= 2");
  Rational b = bernoulli(2 * g);
  Rational r = b / Rational(2L * g * (2L * g - 2));
  return g % 2 == 0 ? r : -r;
}

Rational euler_characteristic_abs(int g) { return -euler_characteristic_constant(g); }

int total(const Multiset& k) { return std::accumulate(k.begin(), k.end(), 0); }

Integer automorphisms(const Multiset& k) {
  std::map<int, int> mult;
  for (int x : k) ++mult[x];
  Integer r = 1;
  for (auto [x, e] : mult) r *= factorial(e);
  return r;
}

namespace {

void multisets_rec(Multiset& cur, int pos, int lo, int kmax, int rem,
                   const std::function<void(const Multiset&)>& fn) {
  if (pos == static_cast<int>(cur.size())) {
    fn(cur);
    return;
  }
  int left = static_cast<int>(cur.size()) - pos;
  for (int v = lo; v <= kmax && v * left <= rem; ++v) {
    cur[pos] = v;
    multisets_rec(cur, pos + 1, v, kmax, rem - v, fn);
  }
}

void partitions_rec(Multiset& cur, int rem, int lo, const std::function<void(const Multiset&)>& fn) {
  if (rem == 0) {
    fn(cur);
    return;
  }
  for (int v = lo; v <= rem; ++v) {
    cur.push_back(v);
    partitions_rec(cur, rem - v, v, fn);
    cur.pop_back();
  }
}

void tuples_rec(std::vector<int>& cur, int pos, int kmax, int rem,
                const std::function<void(const std::vector<int>&)>& fn) {
  if (pos == static_cast<int>(cur.size())) {
    fn(cur);
    return;
  }
  for (int v = 0; v <= kmax && v <= rem; ++v) {
    cur[pos] = v;
    tuples_rec(cur, pos + 1, kmax, rem - v, fn);
  }
}

}  // namespace

void for_each_multiset(int n, int kmax, const std::function<void(const Multiset&)>& fn) {
  for_each_multiset_bounded(n, kmax, n * kmax, fn);
}

void for_each_multiset_bounded(int n, int kmax, int sum_max,
                               const std::function<void(const Multiset&)>& fn) {
  if (n < 0 || sum_max < 0) return;
  Multiset cur(static_cast<std::size_t>(n));
  multisets_rec(cur, 0, 0, kmax, sum_max, fn);
}

void for_each_partition(int w, const std::function<void(const Multiset&)>& fn) {
  if (w < 0) return;
  Multiset cur;
  partitions_rec(cur, w, 1, fn);
}

void for_each_tuple(int n, int kmax, int sum_max,
                    const std::function<void(const std::vector<int>&)>& fn) {
  if (n < 0 || sum_max < 0) return;
  std::vector<int> cur(static_cast<std::size_t>(n));
  tuples_rec(cur, 0, kmax, sum_max, fn);
}

}  // namespace skdv

namespace skdv {

Integer power_of_two(int n) {
  if (n < 0) throw std::invalid_argument("negative power of two");
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return r;
}

}  // namespace skdv
