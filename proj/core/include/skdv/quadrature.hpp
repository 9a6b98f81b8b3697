#pragma once

#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace skdv {

using Real = boost::multiprecision::cpp_bin_float_50;

Real real_pi();

// D(x,y,z) = sinh(x/4) sinh((y+z)/4) / (cosh((x-y-z)/4) cosh((x+y+z)/4))
Real kernel_D(const Real& x, const Real& y, const Real& z);
// R(x,y,z) = (D(x+y,z,0) + D(x-y,z,0)) / 2
Real kernel_R(const Real& x, const Real& y, const Real& z);

enum class Scheme { TanhSinh, GaussKronrod };

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double tolerance = 1e-12;  // absolute
  Scheme scheme = Scheme::TanhSinh;
};

// Smallest radius R >= |X| with int_R^inf u^p |D(X,u,0)| du <= bound,
// from |D(X,u,0)| <= 2|sinh(X/4)| e^{|X|/2} e^{-u/4} for u >= |X|.
Real truncation_radius(const Real& X, int p, const Real& bound);

// int_0^inf u^p D(X,u,0) du
Real line_moment(const Real& X, int p, const QuadratureOptions& opt = {});

// int int x^{2a+1} y^{2b+1} D(L,x,y) dx dy, reduced to one variable through u = x + y.
Real d_moment(const Real& L, int a, int b, const QuadratureOptions& opt = {});
// Same integral by nested one-dimensional quadrature over the triangle x + y <= R.
Real d_moment_nested(const Real& L, int a, int b, const QuadratureOptions& opt = {});
// int x^{2a+1} R(L1, L2, x) dx
Real r_moment(const Real& L1, const Real& L2, int a, const QuadratureOptions& opt = {});

// Runs both schemes and throws QuadratureFailure if they differ by more than tol.
Real line_moment_checked(const Real& X, int p, double tol = 1e-12);

}  // namespace skdv
