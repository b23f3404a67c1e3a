#pragma once

#include <string>
#include <vector>

namespace caustic {

struct CheckResult {
  std::string name;
  bool passed;
  double value;      // measured quantity
  double threshold;  // bound it was compared against
  std::string relation;  // "<=", ">=", "in", ...
};

struct SelftestOptions {
  /// Perturbs the Legendre recurrence used by the orthonormality checks.
  bool inject_recurrence_fault = false;
};

/// Runs the invariant suite at reduced sizes. Deterministic.
std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

}  // namespace caustic
