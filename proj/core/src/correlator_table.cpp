#include "skdv/correlator_table.hpp"

#include <algorithm>
#include <sstream>

namespace skdv {

int spin_s2_power(int g, const Multiset& k) { return 1 - g + total(k); }

void CorrelatorTable::set(int g, Multiset k, const Rational& v) {
  std::sort(k.begin(), k.end());
  if (v.is_zero()) {
    entries_.erase({g, k});
    return;
  }
  entries_[{g, std::move(k)}] = v;
}

Rational CorrelatorTable::get(int g, Multiset k) const {
  std::sort(k.begin(), k.end());
  auto it = entries_.find({g, k});
  return it == entries_.end() ? Rational() : it->second;
}

GradedSeries CorrelatorTable::to_series(Grading grading) const {
  GradedSeries s(trunc_);
  for (const auto& [key, v] : entries_) {
    const auto& [g, k] = key;
    Monomial t = Monomial::from_multiset(k);
    int a = grading == Grading::Spin ? spin_s2_power(g, k) : 0;
    s.add(g - 1, a, t, v / Rational(t.automorphisms()));
  }
  return s;
}

nlohmann::json CorrelatorTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [key, v] : entries_)
    entries.push_back({{"g", key.first}, {"k", key.second}, {"v", v.str()}});
  return {{"engine", engine_}, {"trunc", skdv::to_json(trunc_)}, {"entries", entries}};
}

CorrelatorTable CorrelatorTable::from_json(const nlohmann::json& j) {
  CorrelatorTable t(j.at("engine").get<std::string>(), truncation_from_json(j.at("trunc")));
  for (const auto& e : j.at("entries"))
    t.set(e.at("g").get<int>(), e.at("k").get<Multiset>(),
          Rational::parse(e.at("v").get<std::string>()));
  return t;
}

std::string CorrelatorTable::to_csv() const {
  std::ostringstream os;
  os << "g,k,v\n";
  for (const auto& [key, v] : entries_) {
    os << key.first << ",";
    for (std::size_t i = 0; i < key.second.size(); ++i) os << (i ? ";" : "") << key.second[i];
    os << "," << v.str() << "\n";
  }
  return os.str();
}

}  // namespace skdv
