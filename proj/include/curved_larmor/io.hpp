#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "curved_larmor/config.hpp"

namespace curved_larmor {

/// Bit-exact trajectory CSV header, fixed column order.
inline constexpr const char* kCsvHeader =
    "t,r,phi,z,vr,vphi,vz,epsilon,I,A,C,u0,u1,u2,u3";

struct CsvRow {
    double t, r, phi, z, vr, vphi, vz;
    double epsilon, I, A, C;
    double u0, u1, u2, u3;
};

/// Rows written: samples 0, stride, 2*stride, ... plus the final sample.
/// Values serialized with 17 significant digits (exact double round-trip).
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          int stride);

/// JSON alternative: array of row objects with the same fields.
void write_trajectory_json(const std::string& path, const Trajectory& traj,
                           int stride);

std::vector<CsvRow> read_trajectory_csv(const std::string& path);

/// Drift over the rows that land in the CSV for a given stride.
DriftReport drift_over_rows(const Trajectory& traj, int stride);

/// Run manifest: config echo, integrals, classification, drifts, sample
/// extremes and halt status. Timing data lives in its own field and is the
/// only part excluded from determinism.
nlohmann::json build_manifest(const RunConfig& cfg, const Trajectory& traj,
                              const std::string& csv_file);

void write_manifest(const std::string& path, const nlohmann::json& manifest);

struct VerifyResult {
    bool ok = false;
    double max_mismatch = 0.0;
    std::string message;
};

/// Re-verify a finished run: recompute per-row invariants and drifts from
/// the CSV and compare against the manifest to 1e-12.
VerifyResult verify_run(const std::string& csv_path,
                        const std::string& manifest_path);

} // namespace curved_larmor
