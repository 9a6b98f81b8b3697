#pragma once

#include <map>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "skdv/combinatorics.hpp"
#include "skdv/graded_series.hpp"

namespace skdv {

// s^2-power attached to a correlator when it becomes a series coefficient.
enum class Grading {
  None,  // s^0 everywhere (KW, s=1 specialisations)
  Spin,  // s^{2(1-g+|k|)}
};

int spin_s2_power(int g, const Multiset& k);

// Correlators <tau_k>_g indexed by genus and sorted multi-index.
class CorrelatorTable {
 public:
  using Key = std::pair<int, Multiset>;

  CorrelatorTable(std::string engine, const Truncation& trunc)
      : engine_(std::move(engine)), trunc_(trunc) {}

  const std::string& engine() const { return engine_; }
  const Truncation& truncation() const { return trunc_; }
  const std::map<Key, Rational>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  void set(int g, Multiset k, const Rational& v);
  Rational get(int g, Multiset k) const;

  // log Z contribution: sum over entries of hbar^{g-1} s^{2a} v t^k / |Aut k|.
  GradedSeries to_series(Grading grading) const;

  nlohmann::json to_json() const;
  static CorrelatorTable from_json(const nlohmann::json& j);
  std::string to_csv() const;

 private:
  std::string engine_;
  Truncation trunc_;
  std::map<Key, Rational> entries_;
};

}  // namespace skdv
