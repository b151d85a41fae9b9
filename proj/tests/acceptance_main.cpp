#include <iostream>

#include "nsho/suite.hpp"

int main() {
  const auto results = nsho::suite::run_acceptance(std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.passed) ++failed;
  std::cout << (failed == 0 ? "acceptance: all criteria passed"
                            : "acceptance: " + std::to_string(failed) + " criteria failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
