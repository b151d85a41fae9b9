#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsho::suite {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  double seconds;
  std::string detail;
};

// Full acceptance battery; prints one pass/fail line per criterion to `log`.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

// Fast subset against the stored oracle table (data/smoke_oracles.json when
// reachable, embedded copy otherwise); intended to finish in under a minute.
std::vector<CriterionResult> run_smoke(std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace nsho::suite
