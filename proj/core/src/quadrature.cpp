#include "skdv/quadrature.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <mutex>
#include <map>
#include <string>

namespace skdv {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::cosh;
using boost::multiprecision::exp;
using boost::multiprecision::pow;
using boost::multiprecision::sinh;

Real factorial_real(int n) {
  Real r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// int_R^inf u^p e^{-u/4} du = 4^{p+1} p! e^{-R/4} sum_{k<=p} (R/4)^k / k!
Real exp_tail(const Real& R, int p) {
  Real x = R / 4;
  Real term = 1, sum = 1;
  for (int k = 1; k <= p; ++k) {
    term *= x / k;
    sum += term;
  }
  return pow(Real(4), p + 1) * factorial_real(p) * exp(-x) * sum;
}

Real d_line(const Real& X, const Real& u) {
  return sinh(X / 4) * sinh(u / 4) / (cosh((X - u) / 4) * cosh((X + u) / 4));
}

template <class F>
Real integrate(F f, const Real& a, const Real& b, Scheme scheme, double tol, const char* what) {
  Real err = 0, value;
  const Real rel = Real("1e-32");
  if (scheme == Scheme::TanhSinh) {
    // Abscissa tables are costly at this precision; one integrator per thread.
    static thread_local boost::math::quadrature::tanh_sinh<Real> ts;
    Real l1;
    // Two-argument form: the one-argument path of this Boost version can
    // place an abscissa on the endpoint.
    auto f2 = [&](const Real& x, const Real&) { return f(x); };
    value = ts.integrate(f2, a, b, rel, &err, &l1);
  } else {
    value = boost::math::quadrature::gauss_kronrod<Real, 61>::integrate(f, a, b, 30, rel, &err);
  }
  if (!(err <= Real(tol) / 10))
    throw QuadratureFailure(std::string("requested tolerance unachievable for ") + what +
                            " (error estimate " + err.str(6) + ")");
  return value;
}

struct MomentCache {
  std::mutex mu;
  std::map<std::tuple<std::string, int, int>, Real> values;
};

MomentCache& cache() {
  static MomentCache c;
  return c;
}

}  // namespace

Real real_pi() { return boost::math::constants::pi<Real>(); }

Real kernel_D(const Real& x, const Real& y, const Real& z) {
  return sinh(x / 4) * sinh((y + z) / 4) / (cosh((x - y - z) / 4) * cosh((x + y + z) / 4));
}

Real kernel_R(const Real& x, const Real& y, const Real& z) {
  return (kernel_D(x + y, z, Real(0)) + kernel_D(x - y, z, Real(0))) / 2;
}

Real truncation_radius(const Real& X, int p, const Real& bound) {
  Real C = 2 * abs(sinh(X / 4)) * exp(abs(X) / 2);
  Real R = abs(X) + 16;
  if (C == 0) return R;
  while (C * exp_tail(R, p) > bound) R += 8;
  return R;
}

Real line_moment(const Real& X, int p, const QuadratureOptions& opt) {
  if (p < 0) throw std::invalid_argument("moment exponent must be nonnegative");
  if (X == 0) return Real(0);
  auto key = std::make_tuple(X.str(0, std::ios_base::scientific), p, static_cast<int>(opt.scheme));
  {
    std::lock_guard<std::mutex> lock(cache().mu);
    auto it = cache().values.find(key);
    if (it != cache().values.end()) return it->second;
  }
  // Tail well below tolerance/10 so the result is good to far more than the tolerance.
  Real R = truncation_radius(X, p, Real("1e-30"));
  auto f = [&](const Real& u) { return pow(u, p) * d_line(X, u); };
  // Panels: [0,|X|], then width 32 up to R.
  Real v = 0;
  Real lo = 0, hi = abs(X);
  while (lo < R) {
    if (hi > R) hi = R;
    if (hi > lo) v += integrate(f, lo, hi, opt.scheme, opt.tolerance, "kernel moment");
    lo = hi;
    hi = lo + 32;
  }
  std::lock_guard<std::mutex> lock(cache().mu);
  cache().values.emplace(key, v);
  return v;
}

Real d_moment(const Real& L, int a, int b, const QuadratureOptions& opt) {
  if (a < 0 || b < 0) throw std::invalid_argument("moment exponents must be nonnegative");
  int al = 2 * a + 1, be = 2 * b + 1;
  // int int x^al y^be f(x+y) = al! be! / (al+be+1)! int u^{al+be+1} f(u) du
  Real beta = factorial_real(al) * factorial_real(be) / factorial_real(al + be + 1);
  return beta * line_moment(L, al + be + 1, opt);
}

Real d_moment_nested(const Real& L, int a, int b, const QuadratureOptions& opt) {
  if (a < 0 || b < 0) throw std::invalid_argument("moment exponents must be nonnegative");
  if (L == 0) return Real(0);
  int p = 2 * a + 2 * b + 3;
  // The region x + y > R contributes at most beta * tail(R) <= tail(R).
  Real R = truncation_radius(L, p, Real(opt.tolerance) / 100);
  auto inner = [&](const Real& x) {
    auto g = [&](const Real& y) { return pow(y, 2 * b + 1) * kernel_D(L, x, y); };
    Real err;
    Real v = boost::math::quadrature::gauss_kronrod<Real, 21>::integrate(g, Real(0), R - x, 15,
                                                                         Real("1e-16"), &err);
    return pow(x, 2 * a + 1) * v;
  };
  Real err;
  Real v = boost::math::quadrature::gauss_kronrod<Real, 21>::integrate(inner, Real(0), R, 15,
                                                                       Real("1e-16"), &err);
  if (!(err <= Real(opt.tolerance)))
    throw QuadratureFailure("requested tolerance unachievable for nested double integral");
  return v;
}

Real r_moment(const Real& L1, const Real& L2, int a, const QuadratureOptions& opt) {
  if (a < 0) throw std::invalid_argument("moment exponent must be nonnegative");
  return (line_moment(L1 + L2, 2 * a + 1, opt) + line_moment(L1 - L2, 2 * a + 1, opt)) / 2;
}

Real line_moment_checked(const Real& X, int p, double tol) {
  QuadratureOptions ts{tol, Scheme::TanhSinh};
  QuadratureOptions gk{tol, Scheme::GaussKronrod};
  Real a = line_moment(X, p, ts);
  Real b = line_moment(X, p, gk);
  if (abs(a - b) > Real(tol))
    throw QuadratureFailure("quadrature schemes disagree on kernel moment");
  return a;
}

}  // namespace skdv
