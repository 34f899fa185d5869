#pragma once

// Seeded invariant suite behind `jetreg check`.

#include <cstdint>
#include <string>
#include <vector>

#include "jetreg/liegroup.hpp"

namespace jetreg {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  /// "<=" or ">"
  std::string relation = "<=";
  bool pass = false;
};

struct CheckConfig {
  std::uint64_t seed = 1;
  int intervals = 100;
  /// Weights for the distance-level checks; empty means lambda = (1).
  Vector lambda;
  int instances = 100;
};

/// Every check records its worst-case error against its bound.
std::vector<CheckResult> run_checks(const CheckConfig& config = {});

}  // namespace jetreg
