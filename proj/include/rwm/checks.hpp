#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rwm {

struct CheckResult {
  std::string id;
  std::string description;
  bool passed = false;
  /// Measured quantities and the tolerances they were held to.
  nlohmann::json detail;
  double seconds = 0.0;
};

/// Acceptance criteria 1..10.
constexpr int kCriteria = 10;
CheckResult run_criterion(int n);

/// "automorphy", "forms", "domain", "eichler", "pairing", "spectral", or "all".
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name);

nlohmann::json to_json(const CheckResult& r);

}  // namespace rwm
