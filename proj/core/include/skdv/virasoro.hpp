#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "skdv/correlator_table.hpp"
#include "skdv/graded_series.hpp"

namespace skdv {

enum class Model { KW, gBGW };

// Coefficient data of the Virasoro operators L_m.
struct VirasoroSpec {
  Model model = Model::KW;
  int m_min = -1;
  int m_max = 4;

  static VirasoroSpec kw(int m_max = 4) { return {Model::KW, -1, m_max}; }
  static VirasoroSpec gbgw(int m_max = 4) { return {Model::gBGW, 0, m_max}; }

  // The constraint reads (2c+1)!! d/dt_c Z = L_m Z with c = m + offset().
  int offset() const { return model == Model::KW ? 1 : 0; }
  // Coefficient of hbar d^2/dt_i dt_j in L_m, i + j = m - 1.
  static Rational quadratic(int i, int j);
  // Coefficient of t_i d/dt_{i+m} in L_m.
  static Rational linear(int i, int m);
  void check_m(int m) const;
};

class ConstraintInconsistency : public std::runtime_error {
 public:
  ConstraintInconsistency(int g, const Multiset& k, const std::string& detail);
};

// Correlators solved from the correlator-level form of the Virasoro
// constraints, memoised on demand. Not thread safe; use one per thread.
class CorrelatorSolver {
 public:
  explicit CorrelatorSolver(Model model) : spec_(model == Model::KW ? VirasoroSpec::kw()
                                                                    : VirasoroSpec::gbgw()) {}

  Model model() const { return spec_.model; }
  // <tau_k>_g, unnormalised by symmetry factors.
  Rational correlator(int g, Multiset k);
  // Evaluate the constraint with every admissible choice of the
  // distinguished insertion and require agreement.
  void check_consistency(int g, Multiset k);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  Rational solve_with(int g, const Multiset& k, std::size_t pos);
  std::size_t canonical_position(const Multiset& k) const;
  VirasoroSpec spec_;
  std::map<std::pair<int, Multiset>, Rational> memo_;
};

CorrelatorTable kw_correlators(const Truncation& trunc, bool check_consistency = false);
CorrelatorTable bgw_correlators(const Truncation& trunc, bool check_consistency = false);

// Free energies log Z as graded series; gBGW carries s^{2(1-g+|k|)}.
GradedSeries kw_free_energy(const Truncation& trunc);
GradedSeries bgw_free_energy(const Truncation& trunc);

// Region on which a residual of the m-th constraint is complete, given the input truncation.
Truncation virasoro_certified_region(const Truncation& trunc, const VirasoroSpec& spec, int m);

// Z^{-1}((2c+1)!! d/dt_c - L_m - shift) Z for Z = exp(log_z), evaluated on log_z
// directly and restricted to the certified region.
// t_shift[i], when given, replaces t_i by t_i - t_shift[i] in the linear term.
GradedSeries apply_virasoro_oracle(const GradedSeries& log_z, const VirasoroSpec& spec, int m,
                                   const std::vector<Rational>& t_shift = {});

// (d/dt_0 - sum (2k+1) t_k d/dt_k) log Z - hbar^{-1} s^2 / 2 - 1/8, degree <= dmax - 1.
GradedSeries check_homogeneity(const GradedSeries& log_z);

struct KdvResidual {
  GradedSeries residual;
  int certified_degree = 0;
};

// Residual of U_{t1} - U U_{t0} - (hbar/12) U_{t0 t0 t0} divided by hbar, U = hbar F''.
KdvResidual kdv_residual(const GradedSeries& log_z);

}  // namespace skdv
