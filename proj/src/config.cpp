#include "blowuplab/config.hpp"

#include <fstream>

#include "blowuplab/errors.hpp"

namespace blowuplab {

namespace {
std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}
}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line without '=': " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, CliSettings& s) {
    for (const auto& [key, val] : kv) {
        try {
            if (key == "scenario") s.scenario = val;
            else if (key == "nx") s.overrides.nx = std::stoi(val);
            else if (key == "nz") s.overrides.nz = std::stoi(val);
            else if (key == "cadence") s.overrides.cadence = std::stoi(val);
            else if (key == "L") s.overrides.L = std::stod(val);
            else if (key == "beta") s.overrides.beta = std::stod(val);
            else if (key == "nu") s.overrides.nu = std::stod(val);
            else if (key == "dt") s.overrides.dt = std::stod(val);
            else if (key == "t_end") s.overrides.t_end = std::stod(val);
            else if (key == "cfl") s.overrides.cfl = std::stod(val);
            else if (key == "out") s.out = val;
            else if (key == "format") s.format = val;
            else if (key == "method") {
                if (val == "fd") s.overrides.method = EllipticMethod::FiniteDifference;
                else if (val == "kernel") s.overrides.method = EllipticMethod::AnalyticKernel;
                else throw ParameterError("method must be fd or kernel");
            } else {
                throw ParameterError("unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw ParameterError("bad value for config key '" + key + "': " + val);
        }
    }
}

}  // namespace blowuplab
