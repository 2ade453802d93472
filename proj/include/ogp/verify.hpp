#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ogp {

enum class VerifyLevel { quick, full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;
  double seconds = 0.0;
};

struct Criterion {
  int id = 0;
  std::string title;
  // Monte Carlo criteria only run at the full level.
  bool monte_carlo = false;
  // Writes per-seed measurements to `detail` and returns the verdict.
  std::function<CriterionResult(std::ostream& detail)> run;
};

const std::vector<Criterion>& acceptance_criteria();

// Runs the criteria of the level (or exactly those in `only`), printing
// details and one PASS/FAIL line per criterion to `out`.
std::vector<CriterionResult> verify_suite(VerifyLevel level, std::ostream& out, const std::vector<int>& only = {});

}  // namespace ogp
