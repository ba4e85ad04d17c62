#include "blowuplab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "blowuplab/version.hpp"

namespace blowuplab {

namespace {

const char* kColumns[] = {"t",  "dt", "int_u2_phi", "int_psiz_phi", "int_logu_phi",
                          "F",  "dF", "ddF",        "E",            "r",
                          "h2_u", "min_u", "max_u"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> row_values(const DiagnosticsRecord& r) {
    return {r.t, r.dt, r.int_u2_phi, r.int_psiz_phi, r.int_logu_phi, r.F, r.dF,
            r.ddF, r.E, r.r, r.h2_u, r.min_u, r.max_u};
}

}  // namespace

void emit(const std::vector<DiagnosticsRecord>& records, const std::string& path,
          const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    if (format == "csv") {
        for (size_t c = 0; c < std::size(kColumns); ++c)
            out << kColumns[c] << ",";
        out << "flags\n";
        for (const auto& rec : records) {
            for (double v : row_values(rec)) out << fmt(v) << ",";
            out << rec.flags << "\n";
        }
    } else if (format == "jsonl") {
        for (const auto& rec : records) {
            const auto vals = row_values(rec);
            out << "{";
            for (size_t c = 0; c < std::size(kColumns); ++c)
                out << "\"" << kColumns[c] << "\":" << fmt(vals[c]) << ",";
            out << "\"flags\":" << rec.flags << "}\n";
        }
    } else {
        throw ParameterError("format must be csv or jsonl");
    }
}

void write_summary(const ScenarioRun& run, const std::string& path) {
    nlohmann::ordered_json j;
    j["scenario"] = run.scenario.name;
    j["build"] = kBuildTag;
    j["variant"] = to_string(run.scenario.model.variant);
    j["weight"] = to_string(run.weight.variant);
    j["grid"] = {{"nx", run.grid.nx},
                 {"nz", run.grid.nz},
                 {"a", run.grid.domain.a},
                 {"z_extent", run.grid.domain.semi_infinite() ? "semi-infinite" : "bounded"},
                 {"z_size", run.grid.domain.z_size}};
    const BlowupConstants& c = run.result.constants;
    j["constants"] = {{"alpha", run.weight.alpha},
                      {"lambda1", run.weight.lambda1},
                      {"lambda2", run.weight.lambda2},
                      {"int_phi", run.weight.int_phi},
                      {"A", c.A},
                      {"B", c.B},
                      {"D", c.D},
                      {"C", c.C},
                      {"J", c.J},
                      {"I_inf", c.I_inf},
                      {"T_star", c.T_star},
                      {"lambda", c.lambda},
                      {"T0", c.T0},
                      {"hypothesis_ok", c.hypothesis_ok}};
    j["controls"] = {{"t_end", run.scenario.controls.t_end},
                     {"cfl", run.scenario.controls.cfl},
                     {"dt_fixed", run.scenario.controls.dt_fixed},
                     {"cadence", run.scenario.controls.cadence}};
    j["outcome"] = run.result.outcome == RunOutcome::Blowup ? "blowup" : "completed";
    j["stop_reason"] = run.result.stop_reason;
    j["t_final"] = run.result.t_final;
    if (run.result.outcome == RunOutcome::Blowup && c.hypothesis_ok) {
        j["t_blow"] = run.result.t_final;
        j["t_blow_over_T_star"] = run.result.t_final / c.T_star;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open summary file '" + path + "'");
    out << j.dump(2) << "\n";
}

std::string summary_line(const ScenarioRun& run) {
    std::ostringstream s;
    const BlowupConstants& c = run.result.constants;
    s << "scenario=" << run.scenario.name
      << " outcome=" << (run.result.outcome == RunOutcome::Blowup ? "blowup" : "completed")
      << " reason=" << run.result.stop_reason << " t_final=" << fmt(run.result.t_final)
      << " records=" << run.result.records.size();
    if (run.result.outcome == RunOutcome::Blowup && c.hypothesis_ok)
        s << " T_star=" << fmt(c.T_star)
          << " t_blow/T_star=" << fmt(run.result.t_final / c.T_star);
    return s.str();
}

std::vector<DiagnosticsRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<DiagnosticsRecord> recs;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 14) throw std::runtime_error("bad CSV row: " + line);
        // strtod: std::stod raises out_of_range on subnormals
        auto num = [](const std::string& c) { return std::strtod(c.c_str(), nullptr); };
        DiagnosticsRecord r;
        r.t = num(cells[0]);
        r.dt = num(cells[1]);
        r.int_u2_phi = num(cells[2]);
        r.int_psiz_phi = num(cells[3]);
        r.int_logu_phi = num(cells[4]);
        r.F = num(cells[5]);
        r.dF = num(cells[6]);
        r.ddF = num(cells[7]);
        r.E = num(cells[8]);
        r.r = num(cells[9]);
        r.h2_u = num(cells[10]);
        r.min_u = num(cells[11]);
        r.max_u = num(cells[12]);
        r.flags = static_cast<unsigned>(std::stoul(cells[13]));
        recs.push_back(r);
    }
    return recs;
}

}  // namespace blowuplab
