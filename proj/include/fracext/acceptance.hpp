#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fracext {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
  double limit_seconds;
};

// Runs criteria 1..10 (or only `only` when nonzero). `progress` sees each result as it finishes.
std::vector<CriterionResult> run_acceptance(int only = 0,
                                            const std::function<void(const CriterionResult&)>& progress = {});

std::string format_line(const CriterionResult& r);

}  // namespace fracext
