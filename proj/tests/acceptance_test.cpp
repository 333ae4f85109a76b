// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include "dbar/verify.hpp"

#include <cstdio>

int main() {
    const std::vector<dbar::CheckResult> results = dbar::run_verification_suite(2);
    int failures = 0;
    int index = 0;
    for (const dbar::CheckResult& r : results) {
        ++index;
        if (!r.passed)
            ++failures;
        std::printf("[%2d/%zu] %s %-26s %s\n", index, results.size(),
                    r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    }
    if (failures)
        std::printf("%d of %zu acceptance checks FAILED\n", failures, results.size());
    else
        std::printf("all %zu acceptance checks passed\n", results.size());
    return failures == 0 ? 0 : 1;
}
