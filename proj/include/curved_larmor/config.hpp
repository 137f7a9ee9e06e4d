#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "curved_larmor/dynamics.hpp"

namespace curved_larmor {

/// Configuration error carrying the offending key for diagnostics.
struct ConfigError : std::runtime_error {
    ConfigError(std::string key_, const std::string& message)
        : std::runtime_error(message), key(std::move(key_)) {}
    std::string key;
};

/// One simulation run. Parsed from a flat key=value file with dot-namespaced
/// keys (chart.rho, initial.vr, integration.h, ...); command-line --set
/// overrides file values.
struct RunConfig {
    SpaceChart chart;
    ParticleParams particle;
    FieldParams field;
    State initial;
    double h = 1e-3;
    double T = 20.0;
    int stride = 10;

    static RunConfig defaults();
    static RunConfig from_file(const std::string& path);

    /// Apply one "key=value" assignment; throws ConfigError on unknown keys
    /// or unparseable values.
    void set(const std::string& key, const std::string& value);

    /// Finiteness, positivity and epsilon < c^2 checks; throws ConfigError.
    void validate() const;

    /// Flat key -> value map mirroring the file format (17 significant
    /// digits, round-trip exact).
    std::map<std::string, std::string> as_kv() const;
};

std::string format_double(double v); // %.17g

} // namespace curved_larmor
