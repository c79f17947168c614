// Acceptance batteries: every criterion is computed at its stated bounds
// with exact (tolerance-zero) comparisons, one pass/fail record each.
#pragma once

#include <string>
#include <vector>

namespace cousinforge {

struct CriterionResult {
    std::string id;
    bool pass = false;
    bool gated = true;  // exploratory criteria report without gating
    std::string detail;
};

// Suites: "all", "s41", "tangent", "localcoh", "groebner", "weil",
// "thickening". Unknown names are a precondition error.
std::vector<CriterionResult> run_verify(const std::string& suite);

} // namespace cousinforge
