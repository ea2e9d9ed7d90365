#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace toric {

struct CheckOptions {
  int order = 40;                 // quadrature order for Rayleigh-Ritz checks
  std::uint64_t seed = 0x5eedULL; // Monte Carlo seed
  std::string only;               // run only criteria whose name contains this
  // Negative-control hook: perturbs the closed-form extremal coefficients the
  // solver output is compared against, which must make check 2 fail.
  bool tamper_extremal_coefficients = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double millis = 0.0;
};

/// Runs the full verification suite (the same checks the acceptance test
/// binary reports) and returns one result per criterion.
std::vector<CheckResult> run_selfcheck(const CheckOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace toric
