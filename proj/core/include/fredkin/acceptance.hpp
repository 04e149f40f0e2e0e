#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fredkin {

// One verified acceptance criterion: a self-contained check of the library
// against its contract, at full scale or the reduced --quick scale.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;   // measured values, single line
  double seconds = 0.0;
};

struct AcceptanceOptions {
  // Shrinks the expensive grids (oracle range, series order, localization
  // states) while keeping every criterion exercised.
  bool quick = false;
};

int acceptance_criteria_count();

// Runs one criterion (1-based id).  Throws std::out_of_range for bad ids;
// never throws for in-range ids (failures are reported, not raised).
CriterionResult run_acceptance_criterion(int id, const AcceptanceOptions& opts);

// Runs every criterion in order; on_result (when given) observes each
// finished criterion as it completes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace fredkin
