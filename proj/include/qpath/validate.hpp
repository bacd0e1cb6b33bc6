#pragma once

#include <string>
#include <vector>

#include "qpath/config.hpp"

namespace qpath {

/// Test hooks for negative controls; production callers leave the defaults.
struct ValidationOptions {
    bool corrupt_centering = false; ///< skew the centering operator to force a failure
};

struct ValidationRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationResult {
    std::vector<ValidationRow> rows;
    bool all_pass = true;

    /// Deterministic per-invariant pass/fail table.
    std::string transcript() const;
};

/// Runs the desk-scale invariant suite of every module: simulator norm and
/// oracle checks, pathway additivity, regression identities, kernel centering
/// and eigenproblem residuals, pre-image fixed-point consistency. Seeded by
/// the config; identical configs produce identical transcripts.
ValidationResult validate(const RunConfig& cfg, const ValidationOptions& options = {});

} // namespace qpath
