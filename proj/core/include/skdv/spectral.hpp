#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skdv/laurent.hpp"

namespace skdv {

enum class CurveKind { Airy, Bessel, CK, CNS };

std::string curve_name(CurveKind kind);
CurveKind parse_curve(const std::string& name);

// x = z^2/2, B = dz dz'/(z-z')^2 and a truncated y. For ck, y = z/(z^2+s^2) is
// expanded at z = infinity and truncated at s^{2(order-1)}; for cns, cos(2 pi z)
// is truncated at z^{2 order} with pi^2 formal.
struct SpectralCurve {
  CurveKind kind;
  int order;
  LaurentSeries y;
  // 1 / (y(z) - y(-z)) to the same truncation.
  LaurentSeries inverse_dy;

  static SpectralCurve make(CurveKind kind, int order);
  // Series order large enough for every (g,n) with 2g-2+n <= level.
  static int default_order(CurveKind kind, int level);
};

// Per (g,n), ordered k-vector -> coefficient in Q[s2, pi2] of prod xi_{k_i}(z_i),
// xi_k(z) = (2k+1)!! z^{-(2k+2)} dz.
class OddDifferentialTable {
 public:
  using Key = std::pair<int, std::vector<int>>;

  OddDifferentialTable() = default;
  explicit OddDifferentialTable(std::string engine) : engine_(std::move(engine)) {}

  const std::string& engine() const { return engine_; }
  const std::map<Key, FormalPolynomial>& entries() const { return entries_; }
  void set(int g, std::vector<int> k, const FormalPolynomial& v);
  FormalPolynomial get(int g, const std::vector<int>& k) const;
  // Entries of one (g,n).
  std::map<std::vector<int>, FormalPolynomial> slice(int g, int n) const;

  nlohmann::json to_json() const;
  std::string to_csv() const;

 private:
  std::string engine_;
  std::map<Key, FormalPolynomial> entries_;
};

class InsufficientOrder : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw correlators W_{g,n}: map from pole orders (p_1..p_n) of prod z_i^{-p_i} dz_i to coefficients.
using RawCorrelator = std::map<std::vector<int>, FormalPolynomial>;

class TopologicalRecursion {
 public:
  explicit TopologicalRecursion(SpectralCurve curve);

  const SpectralCurve& curve() const { return curve_; }
  const RawCorrelator& raw(int g, int n);
  // All (g,n) with g <= gmax, 1 <= n <= nmax, 2g-2+n > 0.
  OddDifferentialTable table(int gmax, int nmax);

  // Kernel sign, fixed by the airy (0,3) coefficient being 1.
  static int kernel_sign();

 private:
  RawCorrelator compute(int g, int n);
  SpectralCurve curve_;
  std::map<std::pair<int, int>, RawCorrelator> memo_;
};

OddDifferentialTable tr_correlators(const SpectralCurve& curve, int gmax, int nmax);
OddDifferentialTable tr_correlators(CurveKind kind, int gmax, int nmax);

struct TableMismatch {
  int g;
  std::vector<int> k;
  std::string lhs, rhs;
};

struct TableComparison {
  std::string what;
  std::size_t compared = 0;
  std::size_t nonzero = 0;
  std::vector<TableMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
  nlohmann::json to_json() const;
};

TableComparison compare_tables(const OddDifferentialTable& a, const OddDifferentialTable& b,
                               const std::string& what);

// airy <-> KW, bessel <-> Theta (BGW at s = 0), ck <-> s^{2(1-g+|k|)} zk.
OddDifferentialTable reference_table(CurveKind kind, int gmax, int nmax);
TableComparison compare_to_tables(CurveKind kind, const OddDifferentialTable& tr, int gmax, int nmax);

// Re-expansion in eta^{-1} = (z^2+s^2)^{-1/2}: c^eta_k = sum_j c_{k-j} s^{2j}/(2^j j!) per leg,
// kept for k_i <= kmax.
OddDifferentialTable eta_reexpand(const OddDifferentialTable& ck, int kmax);
// Spin correlators with s^{2(1-g+|k|)}, same shape.
OddDifferentialTable spin_reference(int gmax, int nmax, int kmax);

// Specialise s2 = 0.
OddDifferentialTable at_s_zero(const OddDifferentialTable& t);

struct LaplaceReport {
  int g = 0, n = 0;
  int leg_sign = -1;
  TableComparison comparison;
  nlohmann::json to_json() const;
};

// omega^{cns}_{g,n} against prod d/dz_i Laplace{V(0,L)}, each leg carrying leg_sign.
LaplaceReport cns_laplace_check(int g, int n, int leg_sign = -1);

// Leg sign making (1,1) agree.
int calibrate_laplace_sign();

struct StabilityReport {
  CurveKind kind;
  int order_a = 0, order_b = 0;
  TableComparison comparison;
};

// Same table at orders N and 2N.
StabilityReport stability_check(CurveKind kind, int gmax, int nmax, int order);

// Leg-permutation symmetry of every (g,n) slice; returns offending keys.
std::vector<OddDifferentialTable::Key> symmetry_violations(const OddDifferentialTable& t);

}  // namespace skdv
