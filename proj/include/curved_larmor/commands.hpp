#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curved_larmor/config.hpp"

namespace curved_larmor {

// Exit codes shared by the CLI:
//   0 success, 1 usage/config error, 2 runtime halt (domain/singularity),
//   3 tolerance failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitHalt = 2;
inline constexpr int kExitTolerance = 3;

struct OutputOptions {
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json
};

int cmd_simulate(const RunConfig& cfg, const OutputOptions& out);

struct CompareOptions {
    double tol_z = 1e-6;
    double tol_phi = 1e-6;
    double tol_orbit_residual = 1e-7;
    // Off by default; on-axis comparison requires C = 0 data and requesting
    // it otherwise is a config error. Automatically enabled for C = 0 runs.
    bool phi_closed_form = false;
    std::string format = "text"; // text | json
};

int cmd_compare(const RunConfig& cfg, const CompareOptions& opts,
                std::string* report_out = nullptr);

struct SweepAxis {
    std::string key;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

/// "key=lo:hi:count" -> axis; throws ConfigError on malformed specs.
SweepAxis parse_sweep_axis(const std::string& spec);

int cmd_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
              const OutputOptions& out, int jobs);

int cmd_classify(const RunConfig& cfg, const std::string& format,
                 std::string* report_out = nullptr);

struct MaxwellOptions {
    double r_lo = 0.5;
    double r_hi = 2.0;
    int points = 200;
    double z = 0.0;
    double perturb = 0.0; // adds perturb * r^2 to A_phi
    double tol = 1e-10;
};

int cmd_maxwell_check(const RunConfig& cfg, const MaxwellOptions& opts,
                      std::string* report_out = nullptr);

} // namespace curved_larmor
