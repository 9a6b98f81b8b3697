#pragma once

#include <compare>
#include <string>

#include <nlohmann/json.hpp>

namespace skdv {

struct Truncation {
  int gmax = 2;
  int kmax = 6;
  int dmax = 5;
  int smax = 8;

  void validate() const;
  // Highest hbar power kept, hbar^{gmax-1}; the constant term is always kept.
  int hmax() const { return gmax > 0 ? gmax - 1 : 0; }

  friend bool operator==(const Truncation&, const Truncation&) = default;
  std::string str() const;
};

nlohmann::json to_json(const Truncation& t);
Truncation truncation_from_json(const nlohmann::json& j);

}  // namespace skdv
