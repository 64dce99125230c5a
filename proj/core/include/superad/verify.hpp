#pragma once

#include <string>
#include <vector>

#include "superad/model.hpp"

namespace superad {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0;
  double bound = 0;
  std::string details;
};

/// Acceptance criteria 1..9; criterion = 0 runs all.
std::vector<CheckResult> run_acceptance(int criterion = 0);

/// Cross-module invariant battery (frame identities, propagator laws,
/// recursion bounds).  Known-red items report honestly.
std::vector<CheckResult> run_invariants();

/// One formatted pass/fail line.
std::string format_check(const CheckResult& c);

/// JSON verdict for a set of checks.
std::string checks_to_json(const std::vector<CheckResult>& checks);

}  // namespace superad
