// Command-line driver: run a preset scenario and emit its diagnostics
// series, or verify a preset's hypotheses on the t = 0 data.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "blowuplab/config.hpp"
#include "blowuplab/io.hpp"
#include "blowuplab/scenario.hpp"
#include "blowuplab/version.hpp"

namespace {

struct RawArgs {
    std::string config_path;
    std::string scenario;
    std::string out;
    std::string format;
    std::string method;
    int nx = -1, nz = -1, cadence = -1;
    double L = -1, beta = -1e308, nu = -1, dt = -1, t_end = -1, cfl = -1;
};

void add_common_flags(CLI::App* cmd, RawArgs& a) {
    cmd->add_option("--scenario", a.scenario, "preset name (see --list)");
    cmd->add_option("--config", a.config_path, "flat key=value config file");
    cmd->add_option("--nx", a.nx, "interior resolution per cross-section direction");
    cmd->add_option("--nz", a.nz, "z resolution");
    cmd->add_option("--L", a.L, "truncation length (semi-infinite scenarios)");
    cmd->add_option("--beta", a.beta, "Robin coefficient override");
    cmd->add_option("--nu", a.nu, "viscosity override (thm4.1)");
    cmd->add_option("--dt", a.dt, "fixed time step (disables the adaptive policy)");
    cmd->add_option("--t-end", a.t_end, "final time");
    cmd->add_option("--cadence", a.cadence, "record every n-th accepted step");
    cmd->add_option("--cfl", a.cfl, "adaptive step safety factor");
    cmd->add_option("--out", a.out, "series output path");
    cmd->add_option("--format", a.format, "csv or jsonl");
    cmd->add_option("--method", a.method, "elliptic path: fd or kernel");
}

blowuplab::CliSettings fold(const RawArgs& a) {
    blowuplab::CliSettings s;
    if (!a.config_path.empty())
        blowuplab::apply_config(blowuplab::parse_config_file(a.config_path), s);
    if (!a.scenario.empty()) s.scenario = a.scenario;
    if (!a.out.empty()) s.out = a.out;
    if (!a.format.empty()) s.format = a.format;
    if (a.nx > 0) s.overrides.nx = a.nx;
    if (a.nz > 0) s.overrides.nz = a.nz;
    if (a.cadence > 0) s.overrides.cadence = a.cadence;
    if (a.L > 0) s.overrides.L = a.L;
    if (a.beta > -1e307) s.overrides.beta = a.beta;
    if (a.nu >= 0) s.overrides.nu = a.nu;
    if (a.dt > 0) s.overrides.dt = a.dt;
    if (a.t_end > 0) s.overrides.t_end = a.t_end;
    if (a.cfl > 0) s.overrides.cfl = a.cfl;
    if (!a.method.empty()) {
        if (a.method == "fd")
            s.overrides.method = blowuplab::EllipticMethod::FiniteDifference;
        else if (a.method == "kernel")
            s.overrides.method = blowuplab::EllipticMethod::AnalyticKernel;
        else
            throw blowuplab::ParameterError("--method must be fd or kernel");
    }
    if (s.scenario.empty())
        throw blowuplab::ParameterError("no scenario given (use --scenario)");
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a 3D axisymmetric flow model "
                 "without convection: blowup and regularity experiments"};
    app.set_version_flag("--version", std::string(blowuplab::kBuildTag));

    RawArgs run_args, verify_args;
    bool list = false;
    app.add_flag("--list", list, "list preset scenarios and exit");
    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and emit diagnostics");
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "check hypotheses/identities on t = 0 data only");
    add_common_flags(run_cmd, run_args);
    add_common_flags(verify_cmd, verify_args);

    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& n : blowuplab::scenario_names()) std::cout << n << "\n";
        return 0;
    }

    try {
        if (run_cmd->parsed()) {
            const auto settings = fold(run_args);
            const auto sc = blowuplab::make_scenario(settings.scenario, settings.overrides);
            const auto run = blowuplab::run_scenario(sc);
            if (!run.result.constants.hypothesis_ok)
                std::cerr << "warning: theorem hypotheses not satisfied at t = 0; "
                             "no T* claim applies to this run\n";
            if (!settings.out.empty()) {
                blowuplab::emit(run.result.records, settings.out, settings.format);
                blowuplab::write_summary(run, settings.out + ".summary.json");
            }
            std::cout << blowuplab::summary_line(run) << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            const auto settings = fold(verify_args);
            const auto sc = blowuplab::make_scenario(settings.scenario, settings.overrides);
            std::string report;
            const bool ok = blowuplab::verify_scenario(sc, report);
            std::cout << "verify " << sc.name << ":\n" << report;
            std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "nothing to do: use run, verify, or --list\n";
    return 2;
}
