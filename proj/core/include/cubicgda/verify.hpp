#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubicgda::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Run the full acceptance suite, printing one pass/fail line per
/// criterion to `out`. Every tolerance is pinned in code.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace cubicgda::verify
