#pragma once

#include <map>
#include <string>

#include "blowuplab/scenario.hpp"

namespace blowuplab {

/// Flat key=value configuration ('#' comments, blank lines ignored).
/// Recognized keys mirror the CLI flags: scenario, nx, nz, L, beta, nu, dt,
/// t_end, cadence, cfl, method, out, format.
std::map<std::string, std::string> parse_config_file(const std::string& path);

struct CliSettings {
    std::string scenario;
    Overrides overrides;
    std::string out;            // empty: no series file
    std::string format = "csv"; // csv | jsonl
};

/// Fold a parsed config map into settings (CLI flags are applied on top by
/// the caller). Throws ParameterError on unknown keys or bad values.
void apply_config(const std::map<std::string, std::string>& kv, CliSettings& s);

}  // namespace blowuplab
