// Invariant battery runner: prints one line per invariant, exits nonzero if
// any fails.

#include <iostream>

#include "superad/verify.hpp"

int main() {
  std::vector<superad::CheckResult> checks;
  try {
    checks = superad::run_invariants();
  } catch (const std::exception& e) {
    std::cerr << "invariant suite aborted: " << e.what() << "\n";
    return 2;
  }
  size_t passed = 0;
  for (const auto& c : checks) {
    std::cout << superad::format_check(c) << "\n";
    passed += c.pass ? 1 : 0;
  }
  std::cout << passed << "/" << checks.size() << " invariants passed\n";
  return passed == checks.size() ? 0 : 1;
}
