#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tidal {

struct AcceptanceOptions {
  /// Negative control: run the stationary engine on the coarsest admissible
  /// grid instead of the production grid.
  bool coarse = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string measured;
  std::string required;
  bool passed = false;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One line per criterion; returns true when every criterion passed.
bool print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace tidal
