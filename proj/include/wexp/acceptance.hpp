// The acceptance suite: ten numbered criteria with pinned tolerances and
// runtime limits, runnable from the `report` command and from the dedicated
// test binary. Each criterion prints one pass/fail line.

#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "wexp/report.hpp"

namespace wexp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed, std::ostream& log);

Json acceptance_json(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace wexp
