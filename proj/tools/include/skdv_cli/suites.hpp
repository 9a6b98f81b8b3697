#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skdv/truncation.hpp"

namespace skdv::cli {

struct SuiteResult {
  std::string name;
  bool ok = false;
  nlohmann::json report;
  // One line, e.g. "compared 812, nonzero 301, 0 mismatches".
  std::string summary;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const Truncation& trunc);

}  // namespace skdv::cli
