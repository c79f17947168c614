// Acceptance suite: runs every criterion at its stated bounds and prints
// one pass/fail line per criterion. Gated criteria drive the exit code;
// the thickening comparison is exploratory and reported only.
#include <iostream>

#include "cousinforge/verify.hpp"

int main() {
    auto results = cousinforge::run_verify("all");
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id
                  << (r.gated ? "" : " (exploratory)") << " - " << r.detail << "\n";
        if (r.gated && !r.pass) ok = false;
    }
    std::cout << (ok ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << "\n";
    return ok ? 0 : 1;
}
