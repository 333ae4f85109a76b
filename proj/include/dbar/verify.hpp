#ifndef DBAR_VERIFY_HPP
#define DBAR_VERIFY_HPP

#include <string>
#include <vector>

namespace dbar {

/// Outcome of one end-to-end verification check.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail; // measured quantities vs pinned tolerances
};

/// The full verification suite behind the `reproduce` verb: each check
/// pins one quantitative statement of the theory to an explicit tolerance.
std::vector<CheckResult> run_verification_suite(int workers = 1);

} // namespace dbar

#endif
