#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skdv/quadrature.hpp"
#include "skdv/volume.hpp"

namespace skdv {

// Overall factor on both integral terms of the recursion.
enum class KernelScale { Unit, InverseTwoPi };

struct RecursionConvention {
  bool include_V01 = true;
  bool include_V02 = true;
  KernelScale scale = KernelScale::InverseTwoPi;

  std::string str() const;
  nlohmann::json to_json() const;
};

// Every flag combination, the default first.
std::vector<RecursionConvention> all_conventions();

struct OrderResidual {
  int s2 = 0;
  Real lhs, rhs;
  Real residual() const;
};

struct RecursionResult {
  int g = 0, n = 0;
  std::vector<Real> L;
  RecursionConvention convention;
  std::vector<OrderResidual> orders;

  Real max_residual() const;
  // |sum_a s^{2a} (lhs_a - rhs_a)|
  Real residual_at(const Real& s) const;
  nlohmann::json to_json() const;
};

// L_1 V_{g,n} = 1/2 int int xy D(L_1,x,y) P_{g,n+1} + sum_j int x R(L_1,L_j,x) V_{g,n-1}
//             + delta_{1,n}(s^2 delta_{0,g}/2 + delta_{1,g}/8) L_1,
// compared order by order in s^2 with all moments by quadrature.
class RecursionChecker {
 public:
  explicit RecursionChecker(int smax, QuadratureOptions opt = {}) : smax_(smax), opt_(opt) {}

  const VolumePolynomial& volume(int g, int n);
  RecursionResult check(int g, int n, const std::vector<Real>& L, const RecursionConvention& conv);

 private:
  int smax_;
  QuadratureOptions opt_;
  TranslatedCorrelators tc_;
  std::map<std::pair<int, int>, VolumePolynomial> volumes_;
};

RecursionResult recursion_orders(int g, int n, const std::vector<Real>& L,
                                 const RecursionConvention& conv, int smax);
Real recursion_residual(int g, int n, const Real& s, const std::vector<Real>& L,
                        const RecursionConvention& conv, int smax);

}  // namespace skdv
