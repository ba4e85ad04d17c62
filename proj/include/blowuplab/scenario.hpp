#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blowuplab/diagnostics.hpp"
#include "blowuplab/dynamics.hpp"
#include "blowuplab/weights.hpp"

namespace blowuplab {

/// CLI/config overrides applied while a scenario is constructed.
struct Overrides {
    std::optional<int> nx, nz, cadence;
    std::optional<double> L, beta, nu, dt, t_end, cfl;
    std::optional<EllipticMethod> method;
};

/// A preset experiment: model variant, weight, grid resolution, controls and
/// initial data satisfying the scenario's boundary conditions exactly at t=0.
struct Scenario {
    std::string name;
    ModelSpec model;
    WeightSpec weight_spec;
    int nx = 32;
    int nz = 128;
    Controls controls;
    std::function<void(const Grid&, SimState&)> make_initial;

    Grid make_grid() const { return Grid{model.domain, nx, nz}; }
};

std::vector<std::string> scenario_names();

/// Build a preset by name (thm3.1, thm3.3, rem3.2, thm3.4, thm4.1, thm5.1,
/// thm5.2, s5.3-periodic, s5.3-dirichlet, sec6-regularity; "sec6" is an
/// accepted alias). Throws ParameterError on unknown names or inadmissible
/// overrides.
Scenario make_scenario(const std::string& name, const Overrides& ov = {});

struct ScenarioRun {
    Scenario scenario;
    Grid grid;
    EigenWeight weight;
    RunResult result;
};

/// Run a scenario end to end and apply the post-processing passes that fill
/// F/dF/ddF and the per-record check flags. A control weight, when given,
/// has its weighted integrals recorded alongside (negative controls).
ScenarioRun run_scenario(const Scenario& sc, const EigenWeight* control_weight = nullptr);

/// Static t=0 validation: weight eigen-relations, resonance admissibility,
/// initial boundary compliance, theorem hypotheses, log-bound margin, r(0).
/// Prints one PASS/FAIL line per check to out; returns true when all pass.
bool verify_scenario(const Scenario& sc, std::string& report);

}  // namespace blowuplab
