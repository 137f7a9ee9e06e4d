#include "curved_larmor/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace curved_larmor {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

RunConfig RunConfig::defaults() { return RunConfig{}; }

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "config key '" + key + "': cannot parse '" + value +
                                   "' as a number");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "config key '" + key + "': cannot parse '" + value +
                                   "' as an integer");
    }
}

} // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open config file '" + path + "'");
    RunConfig cfg = defaults();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(stripped, "config line " + std::to_string(lineno) +
                                            ": expected key=value, got '" + stripped + "'");
        cfg.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "chart.kappa") chart.kappa = parse_int(key, value);
    else if (key == "chart.rho") chart.rho = parse_double(key, value);
    else if (key == "chart.c") chart.c = parse_double(key, value);
    else if (key == "particle.mass") particle.mass = parse_double(key, value);
    else if (key == "particle.charge") particle.charge = parse_double(key, value);
    else if (key == "field.B") field.B = parse_double(key, value);
    else if (key == "initial.t") initial.t = parse_double(key, value);
    else if (key == "initial.r") initial.r = parse_double(key, value);
    else if (key == "initial.phi") initial.phi = parse_double(key, value);
    else if (key == "initial.z") initial.z = parse_double(key, value);
    else if (key == "initial.vr") initial.vr = parse_double(key, value);
    else if (key == "initial.vphi") initial.vphi = parse_double(key, value);
    else if (key == "initial.vz") initial.vz = parse_double(key, value);
    else if (key == "integration.h") h = parse_double(key, value);
    else if (key == "integration.T") T = parse_double(key, value);
    else if (key == "output.stride") stride = parse_int(key, value);
    else throw ConfigError(key, "unknown config key '" + key + "'");
}

void RunConfig::validate() const {
    try {
        chart.validate();
    } catch (const std::exception& e) {
        throw ConfigError("chart", e.what());
    }
    try {
        particle.validate();
    } catch (const std::exception& e) {
        throw ConfigError("particle", e.what());
    }
    if (!std::isfinite(field.B)) throw ConfigError("field.B", "field.B must be finite");
    if (!(h > 0.0) || !std::isfinite(h))
        throw ConfigError("integration.h", "integration.h must be positive");
    if (!(T > 0.0) || !std::isfinite(T))
        throw ConfigError("integration.T", "integration.T must be positive");
    if (stride < 1) throw ConfigError("output.stride", "output.stride must be >= 1");
    if (!state_in_domain(chart, initial))
        throw ConfigError("initial", "initial state outside the chart domain");
    const double eps = squared_speed(chart, initial);
    if (!(eps < chart.c * chart.c))
        throw ConfigError("initial",
                          "initial state is superluminal: epsilon = " +
                              format_double(eps) + " >= c^2");
}

std::map<std::string, std::string> RunConfig::as_kv() const {
    return {
        {"chart.kappa", std::to_string(chart.kappa)},
        {"chart.rho", format_double(chart.rho)},
        {"chart.c", format_double(chart.c)},
        {"particle.mass", format_double(particle.mass)},
        {"particle.charge", format_double(particle.charge)},
        {"field.B", format_double(field.B)},
        {"initial.t", format_double(initial.t)},
        {"initial.r", format_double(initial.r)},
        {"initial.phi", format_double(initial.phi)},
        {"initial.z", format_double(initial.z)},
        {"initial.vr", format_double(initial.vr)},
        {"initial.vphi", format_double(initial.vphi)},
        {"initial.vz", format_double(initial.vz)},
        {"integration.h", format_double(h)},
        {"integration.T", format_double(T)},
        {"output.stride", std::to_string(stride)},
    };
}

} // namespace curved_larmor
