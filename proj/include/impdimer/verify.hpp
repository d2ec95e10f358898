#pragma once

#include <string>
#include <vector>

namespace impdimer {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the acceptance criteria and returns one result per criterion.
// suite: "full" (default) or "small" (trimmed instance lists and sample
// counts for a quick smoke run). cli_path: executable re-invoked by the
// determinism criterion; that criterion fails when the path is empty.
std::vector<CriterionResult> run_acceptance(const std::string& suite = "full",
                                            const std::string& cli_path = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace impdimer
