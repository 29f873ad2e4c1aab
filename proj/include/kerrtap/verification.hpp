#pragma once

#include <string>
#include <vector>

namespace kerrtap {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Closed-form vs circuit equivalence on a grid_n x grid_n (theta, phi)
/// grid plus the fixed-value regressions (capacity figure, worked
/// examples, entangled-state structure, security threshold). Tolerances
/// are compiled in; grid_n must be >= 2.
std::vector<CheckResult> run_verification(int grid_n);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace kerrtap
