#pragma once

#include <string>
#include <vector>

namespace sepfi {

struct VerifyOptions {
    /// Check groups to run; empty runs all of verify_groups().
    std::vector<std::string> subset;
    /// Oracle settings; an out-of-range fd_step makes the oracle checks fail.
    double fd_step = 1e-4;
    int grid_n = 2048;
};

struct CheckResult {
    std::string group;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// "oracle", "derivatives", "limits", "dominance", "saturation", "invariants".
const std::vector<std::string>& verify_groups();

/// Runs the cross-validation matrix. Each check catches its own exceptions
/// and reports them as a failure.
std::vector<CheckResult> run_verify(const VerifyOptions& options = {});

}  // namespace sepfi
