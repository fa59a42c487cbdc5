#pragma once

#include <string>
#include <vector>

namespace cqk::verify {

/// Outcome of one acceptance criterion: an identifier, a short name, the
/// pass/fail verdict, and a human-readable detail line (counts, residuals,
/// first failure).
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Run one criterion by id (1..11).
CriterionResult run_criterion(int id);

/// Run all criteria in order.
std::vector<CriterionResult> run_all();

}  // namespace cqk::verify
