#pragma once

#include <string>
#include <vector>

#include "blowuplab/scenario.hpp"

namespace blowuplab {

/// Fixed column order shared by the CSV and JSONL emitters:
///   t, dt, int_u2_phi, int_psiz_phi, int_logu_phi, F, dF, ddF, E, r,
///   h2_u, min_u, max_u, flags
/// Numbers are serialized with 17 significant digits so a re-read
/// reproduces the doubles exactly.
void emit(const std::vector<DiagnosticsRecord>& records, const std::string& path,
          const std::string& format);

/// Sidecar JSON next to the series file: theorem constants, grid resolution,
/// controls, outcome and the build tag. Deterministic (no timestamps).
void write_summary(const ScenarioRun& run, const std::string& path);

/// One-line run summary for stdout.
std::string summary_line(const ScenarioRun& run);

/// Parse a CSV produced by emit (testing aid).
std::vector<DiagnosticsRecord> read_csv(const std::string& path);

}  // namespace blowuplab
