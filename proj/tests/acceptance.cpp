// Acceptance suite: one pass/fail line per criterion, exit nonzero on any
// failure.  `--criterion N` runs a single criterion.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "superad/verify.hpp"

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      criterion = std::atoi(argv[i + 1]);
      ++i;
    }
  }
  std::vector<superad::CheckResult> checks;
  try {
    checks = superad::run_acceptance(criterion);
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << "\n";
    return 2;
  }
  size_t passed = 0;
  for (const auto& c : checks) {
    std::cout << superad::format_check(c) << "\n";
    passed += c.pass ? 1 : 0;
  }
  std::cout << passed << "/" << checks.size() << " acceptance criteria passed\n";
  return passed == checks.size() ? 0 : 1;
}
