#pragma once

#include <functional>
#include <vector>

#include "skdv/rational.hpp"

namespace skdv {

// n!! for n >= -1.
Integer double_factorial(int n);
Integer factorial(int n);
Integer binomial(int n, int k);
Integer power_of_two(int n);

// B_n for even n >= 2, with B_2 = 1/6.
Rational bernoulli(int n);

// Integral of the full kappa class over M_g, equal to -|chi(M_g)|.
Rational euler_characteristic_constant(int g);
// |chi(M_g)|, the coefficient of hbar^{g-1} in chi(hbar).
Rational euler_characteristic_abs(int g);

// Sorted multi-index of psi exponents.
using Multiset = std::vector<int>;

int total(const Multiset& k);
// Product of multiplicities factorial, the symmetry factor of a multiset.
Integer automorphisms(const Multiset& k);

// Every sorted multi-index of length n with entries in [0, kmax].
void for_each_multiset(int n, int kmax, const std::function<void(const Multiset&)>& fn);
// Every sorted multi-index of length n with entries in [0, kmax] and entry sum <= smax.
void for_each_multiset_bounded(int n, int kmax, int sum_max,
                               const std::function<void(const Multiset&)>& fn);
// Every multiset of positive parts summing to w, parts sorted ascending.
void for_each_partition(int w, const std::function<void(const Multiset&)>& fn);
// Every ordered tuple of length n with entries in [0, kmax] and entry sum <= sum_max.
void for_each_tuple(int n, int kmax, int sum_max,
                    const std::function<void(const std::vector<int>&)>& fn);

}  // namespace skdv
