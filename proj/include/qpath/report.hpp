#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qpath/harness.hpp"

namespace qpath {

/// Deterministic JSON document for a run: config echo, fitted model,
/// residuals, pre-image result and decoded pathway. Contains no wall-clock
/// data, so identical configs produce byte-identical files.
nlohmann::json report_to_json(const RunReport& report);

/// Writes report.json and/or the CSV traces under `dir`:
///   report.json          full report (format json|both)
///   preimage_trace.csv   iteration, distance, step_norm, denominator, in_hull
///   edge_comparison.csv  edge, u, v, omega_star, omega_sim, abs_deviation
///   ratio_test.csv       delta_f, f_star, f_sim, gap, ratio
///   timings.json         wall times (always; excluded from report.json)
/// CSV numbers carry 17 significant digits. Throws ConfigError when the
/// directory cannot be created or a file cannot be written.
void emit_report(const RunReport& report, const std::string& dir, const std::string& format,
                 const StageTimings& timings);

} // namespace qpath
