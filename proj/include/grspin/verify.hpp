#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Invariant suites for every module, runnable from the CLI (`verify`) and
// reused by the test binaries. Each suite reports its worst residual against
// the tolerance it was checked with.

namespace grspin {

struct SuiteResult {
    std::string name;
    bool passed = true;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string detail; // worst offending case, empty when clean
};

// Runs all suites. `tol_override`, when set, replaces the residual tolerance
// of every residual-style check (structural ratio checks keep their own
// thresholds). The seed drives every randomized sweep.
std::vector<SuiteResult> run_verification(std::uint64_t seed,
                                          std::optional<double> tol_override = std::nullopt);

} // namespace grspin
