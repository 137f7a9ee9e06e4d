#include "curved_larmor/io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "curved_larmor/analytic.hpp"

namespace curved_larmor {

namespace {

std::vector<std::size_t> row_indices(std::size_t n, int stride) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(stride))
        idx.push_back(i);
    if (n > 0 && idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

CsvRow make_row(const Trajectory& traj, const Sample& s) {
    const Embedded u = embed(traj.chart, s.state);
    return {s.state.t, s.state.r,  s.state.phi,    s.state.z,
            s.state.vr, s.state.vphi, s.state.vz,
            s.constants.epsilon, s.constants.I, s.constants.A, s.constants.C,
            u.u0, u.u1, u.u2, u.u3};
}

} // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          int stride) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << kCsvHeader << "\n";
    for (std::size_t i : row_indices(traj.samples.size(), stride)) {
        const CsvRow r = make_row(traj, traj.samples[i]);
        const double cols[15] = {r.t,  r.r,  r.phi, r.z,  r.vr, r.vphi, r.vz, r.epsilon,
                                 r.I,  r.A,  r.C,   r.u0, r.u1, r.u2,   r.u3};
        for (int c = 0; c < 15; ++c) {
            if (c) out << ',';
            out << format_double(cols[c]);
        }
        out << "\n";
    }
}

void write_trajectory_json(const std::string& path, const Trajectory& traj,
                           int stride) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i : row_indices(traj.samples.size(), stride)) {
        const CsvRow r = make_row(traj, traj.samples[i]);
        rows.push_back({{"t", r.t},
                        {"r", r.r},
                        {"phi", r.phi},
                        {"z", r.z},
                        {"vr", r.vr},
                        {"vphi", r.vphi},
                        {"vz", r.vz},
                        {"epsilon", r.epsilon},
                        {"I", r.I},
                        {"A", r.A},
                        {"C", r.C},
                        {"u0", r.u0},
                        {"u1", r.u1},
                        {"u2", r.u2},
                        {"u3", r.u3}});
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << rows.dump(2) << "\n";
}

std::vector<CsvRow> read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("'" + path + "': unexpected CSV header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        double v[15];
        std::string cell;
        for (int c = 0; c < 15; ++c) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error("'" + path + "': short row");
            v[c] = std::stod(cell);
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8],
                        v[9], v[10], v[11], v[12], v[13], v[14]});
    }
    return rows;
}

DriftReport drift_over_rows(const Trajectory& traj, int stride) {
    Trajectory sub;
    sub.chart = traj.chart;
    for (std::size_t i : row_indices(traj.samples.size(), stride))
        sub.samples.push_back(traj.samples[i]);
    return drift_report(sub);
}

nlohmann::json build_manifest(const RunConfig& cfg, const Trajectory& traj,
                              const std::string& csv_file) {
    nlohmann::json m;
    m["config"] = cfg.as_kv();

    const MotionConstants& k0 = traj.initial().constants;
    m["constants"] = {{"epsilon", k0.epsilon},
                      {"omega", k0.omega},
                      {"I", k0.I},
                      {"A", k0.A},
                      {"C", k0.C}};

    nlohmann::json cls;
    if (traj.chart.kappa < 0 && k0.epsilon > 0.0 && k0.omega != 0.0) {
        const ZRegime regime = forbidden_region(k0, traj.chart);
        cls["z_regime"] = to_string(regime.kind);
        if (regime.kind == ZRegimeKind::Reflected) {
            cls["z_plus"] = regime.z_plus;
            cls["z_minus"] = regime.z_minus;
        }
        const OrbitClass oc = classify_orbit(k0, traj.chart);
        cls["orbit_class"] = to_string(oc);
        if (oc == OrbitClass::BoundedCircle) {
            const OrbitGeometry geom = circle_params(k0, traj.chart);
            cls["r0"] = geom.r0;
            cls["R"] = geom.R;
        }
    } else {
        cls["z_regime"] = "unavailable";
        cls["orbit_class"] = "unavailable";
    }
    m["classification"] = cls;

    auto drift_json = [](const DriftReport& d) {
        return nlohmann::json{{"epsilon", d.epsilon},
                              {"I", d.I},
                              {"A", d.A},
                              {"C", d.C},
                              {"omega", d.omega}};
    };
    m["drift"] = drift_json(traj.drift);
    m["drift_csv_rows"] = drift_json(drift_over_rows(traj, cfg.stride));

    double r_lo = std::numeric_limits<double>::infinity(), r_hi = 0.0;
    double z_lo = std::numeric_limits<double>::infinity();
    double z_hi = -std::numeric_limits<double>::infinity();
    double min_abs_sz = std::numeric_limits<double>::infinity();
    double max_dr0 = 0.0;
    const bool cylinder =
        cls.contains("r0") &&
        std::abs(k0.C) <= 1e-10 * (std::abs(k0.A) +
                                   k0.omega * k0.omega * traj.chart.rho * traj.chart.rho);
    for (const Sample& s : traj.samples) {
        r_lo = std::min(r_lo, s.state.r);
        r_hi = std::max(r_hi, s.state.r);
        z_lo = std::min(z_lo, s.state.z);
        z_hi = std::max(z_hi, s.state.z);
        min_abs_sz = std::min(min_abs_sz, std::abs(ktrig(traj.chart, s.state.z).s));
        if (cylinder)
            max_dr0 = std::max(max_dr0, std::abs(s.state.r - cls["r0"].get<double>()));
    }
    nlohmann::json ext = {{"r_min_seen", r_lo},
                          {"r_max_seen", r_hi},
                          {"z_min_seen", z_lo},
                          {"z_max_seen", z_hi},
                          {"min_abs_sinh_z", min_abs_sz}};
    if (cylinder) ext["max_abs_r_minus_r0"] = max_dr0;
    m["extremes"] = ext;

    m["halt"] = {{"reason", to_string(traj.halt)}, {"message", traj.halt_message}};
    m["csv"] = {{"file", csv_file},
                {"stride", cfg.stride},
                {"samples_total", traj.samples.size()},
                {"rows", row_indices(traj.samples.size(), cfg.stride).size()}};
    m["timing"] = {
        {"generated_at_unix_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
             .count()},
        {"wall_ms", traj.wall_ms}};
    return m;
}

void write_manifest(const std::string& path, const nlohmann::json& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << manifest.dump(2) << "\n";
}

VerifyResult verify_run(const std::string& csv_path,
                        const std::string& manifest_path) {
    VerifyResult res;
    nlohmann::json manifest;
    {
        std::ifstream in(manifest_path);
        if (!in) {
            res.message = "cannot open manifest";
            return res;
        }
        in >> manifest;
    }
    RunConfig cfg = RunConfig::defaults();
    for (const auto& [key, value] : manifest["config"].items())
        cfg.set(key, value.get<std::string>());
    cfg.validate();

    const std::vector<CsvRow> rows = read_trajectory_csv(csv_path);
    if (rows.empty()) {
        res.message = "empty CSV";
        return res;
    }

    // Recompute invariants from the state columns and the drift over rows,
    // then compare with what the manifest recorded.
    const double c2 = cfg.chart.c * cfg.chart.c;
    State s0{rows[0].t, rows[0].r, rows[0].phi, rows[0].z,
             rows[0].vr, rows[0].vphi, rows[0].vz};
    const double eps0 = squared_speed(cfg.chart, s0);
    const double omega0 = cyclotron_omega(cfg.particle, cfg.field, cfg.chart, eps0);

    DriftReport drift;
    double max_row_mismatch = 0.0;
    for (const CsvRow& row : rows) {
        State s{row.t, row.r, row.phi, row.z, row.vr, row.vphi, row.vz};
        MotionConstants k;
        k.epsilon = squared_speed(cfg.chart, s);
        k.omega = omega0 * std::sqrt((c2 - k.epsilon) / (c2 - eps0));
        k.I = invariant_I(cfg.chart, s, omega0);
        k.A = invariant_A(cfg.chart, s);
        k.C = invariant_C_direct(cfg.chart, s, omega0);
        auto rel = [](double a, double b) {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
        };
        max_row_mismatch = std::max({max_row_mismatch, rel(k.epsilon, row.epsilon),
                                     rel(k.I, row.I), rel(k.A, row.A), rel(k.C, row.C)});
        auto exc = [](double value, double ref) {
            return std::abs(value - ref) / std::max(std::abs(ref), 1e-30);
        };
        drift.epsilon = std::max(drift.epsilon, exc(k.epsilon, eps0));
        drift.I = std::max(drift.I, exc(k.I, invariant_I(cfg.chart, s0, omega0)));
        drift.A = std::max(drift.A, exc(k.A, invariant_A(cfg.chart, s0)));
        drift.C = std::max(drift.C, exc(k.C, invariant_C_direct(cfg.chart, s0, omega0)));
        drift.omega = std::max(drift.omega, exc(k.omega, omega0));
    }

    const nlohmann::json& md = manifest["drift_csv_rows"];
    const double mismatch =
        std::max({std::abs(drift.epsilon - md["epsilon"].get<double>()),
                  std::abs(drift.I - md["I"].get<double>()),
                  std::abs(drift.A - md["A"].get<double>()),
                  std::abs(drift.C - md["C"].get<double>()),
                  std::abs(drift.omega - md["omega"].get<double>()),
                  max_row_mismatch});
    res.max_mismatch = mismatch;
    res.ok = mismatch <= 1e-12;
    if (!res.ok) res.message = "drift mismatch " + format_double(mismatch);
    return res;
}

} // namespace curved_larmor
