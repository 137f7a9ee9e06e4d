#include "curved_larmor/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "curved_larmor/analytic.hpp"
#include "curved_larmor/io.hpp"

namespace curved_larmor {

namespace fs = std::filesystem;

namespace {

int config_failure(const ConfigError& e) {
    std::cerr << "config error";
    if (!e.key.empty()) std::cerr << " [" << e.key << "]";
    std::cerr << ": " << e.what() << "\n";
    return kExitConfig;
}

} // namespace

int cmd_simulate(const RunConfig& cfg, const OutputOptions& out) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        return config_failure(e);
    }
    fs::create_directories(out.out_dir);
    const Trajectory traj =
        integrate(cfg.chart, cfg.particle, cfg.field, cfg.initial, cfg.h, cfg.T);

    const bool json_rows = out.format == "json";
    const std::string data_file = json_rows ? "trajectory.json" : "trajectory.csv";
    const std::string data_path = (fs::path(out.out_dir) / data_file).string();
    if (json_rows)
        write_trajectory_json(data_path, traj, cfg.stride);
    else
        write_trajectory_csv(data_path, traj, cfg.stride);
    write_manifest((fs::path(out.out_dir) / "manifest.json").string(),
                   build_manifest(cfg, traj, data_file));

    if (!traj.completed()) {
        std::cerr << "integration halted (" << to_string(traj.halt)
                  << "): " << traj.halt_message << "\n";
        return kExitHalt;
    }
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, const CompareOptions& opts,
                std::string* report_out) {
    try {
        cfg.validate();
        if (cfg.chart.kappa > 0)
            throw ConfigError("chart.kappa",
                              "compare drives hyperbolic closed forms; chart.kappa must be -1");
    } catch (const ConfigError& e) {
        return config_failure(e);
    }

    const MotionConstants k0 =
        motion_constants(cfg.chart, cfg.particle, cfg.field, cfg.initial);
    const double rho2 = cfg.chart.rho * cfg.chart.rho;
    const double c_scale =
        std::abs(k0.A) + rho2 * k0.omega * k0.omega + k0.I * k0.I / rho2;
    const bool onaxis = std::abs(k0.C) <= 1e-10 * std::max(c_scale, 1e-30);

    if (opts.phi_closed_form && !onaxis) {
        std::cerr << "config error [initial]: the closed-form phi comparison "
                     "needs on-axis data (C = 0); this run has C = "
                  << format_double(k0.C) << "\n";
        return kExitConfig;
    }

    const Trajectory traj =
        integrate(cfg.chart, cfg.particle, cfg.field, cfg.initial, cfg.h, cfg.T);
    if (!traj.completed()) {
        std::cerr << "integration halted (" << to_string(traj.halt)
                  << "): " << traj.halt_message << "\n";
        return kExitHalt;
    }

    nlohmann::json rep;
    bool tolerable = true;
    const bool marginal_z =
        std::abs(k0.epsilon - k0.A) <=
        1e-12 * std::max(std::abs(k0.epsilon), std::abs(k0.A));

    if (k0.epsilon > 0.0 && !marginal_z) {
        const ZReference ref = fit_z_reference(k0, cfg.chart, cfg.initial);
        double dev_z = 0.0, dev_vz = 0.0;
        for (const Sample& s : traj.samples) {
            const ZClosedForm zc =
                z_closed_form(k0, cfg.chart, s.state.t, ref.t0, ref.sign);
            dev_z = std::max(dev_z, std::abs(zc.z - s.state.z));
            dev_vz = std::max(dev_vz, std::abs(zc.vz - s.state.vz));
        }
        rep["z"] = {{"sup_dev_z", dev_z},
                    {"sup_dev_vz", dev_vz},
                    {"tol", opts.tol_z},
                    {"pass", dev_z <= opts.tol_z && dev_vz <= opts.tol_z}};
        tolerable = tolerable && dev_z <= opts.tol_z && dev_vz <= opts.tol_z;
    }

    if (onaxis && k0.A > 0.0 && !marginal_z && k0.epsilon > 0.0) {
        const OrbitGeometry geom = circle_params(k0, cfg.chart);
        const ZReference ref = fit_z_reference(k0, cfg.chart, cfg.initial);
        const PhiClosedForm at_start = phi_closed_form_onaxis(
            k0, cfg.chart, geom.r0, cfg.initial.t, ref.t0, 0.0);
        const double phi0 = cfg.initial.phi - at_start.phi;
        double dev_phi = 0.0, dev_vphi = 0.0, dev_eq29 = 0.0;
        for (const Sample& s : traj.samples) {
            const PhiClosedForm pc = phi_closed_form_onaxis(
                k0, cfg.chart, geom.r0, s.state.t, ref.t0, phi0);
            dev_phi = std::max(dev_phi, std::abs(pc.phi - s.state.phi));
            dev_vphi = std::max(dev_vphi, std::abs(pc.vphi - s.state.vphi));
            const ZClosedForm zc =
                z_closed_form(k0, cfg.chart, s.state.t, ref.t0, ref.sign);
            dev_eq29 = std::max(
                dev_eq29,
                std::abs(onaxis_vphi(cfg.chart, k0.omega, geom.r0, zc.z) - pc.vphi));
        }
        rep["phi_onaxis"] = {{"sup_dev_phi", dev_phi},
                             {"sup_dev_vphi", dev_vphi},
                             {"sup_dev_vphi_vs_z_form", dev_eq29},
                             {"tol", opts.tol_phi},
                             {"pass", dev_phi <= opts.tol_phi &&
                                          dev_vphi <= opts.tol_phi}};
        tolerable =
            tolerable && dev_phi <= opts.tol_phi && dev_vphi <= opts.tol_phi;
    }

    if (!onaxis && k0.C > 0.0) {
        double dev_orbit = 0.0;
        try {
            const double phi0 = phi0_from_state(k0, cfg.chart, cfg.initial);
            for (const Sample& s : traj.samples)
                dev_orbit = std::max(
                    dev_orbit, std::abs(orbit_residual_normalized(
                                   cfg.chart, s.state.r, s.state.phi, k0, phi0)));
            rep["orbit_equation"] = {{"sup_normalized_residual", dev_orbit},
                                     {"tol", opts.tol_orbit_residual},
                                     {"pass", dev_orbit <= opts.tol_orbit_residual}};
            tolerable = tolerable && dev_orbit <= opts.tol_orbit_residual;
        } catch (const std::domain_error&) {
            // initial point degenerate for phi0 extraction; skip this check
        }
    }

    std::string text;
    if (opts.format == "json") {
        text = rep.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (const auto& [name, block] : rep.items()) {
            os << name << ":";
            for (const auto& [key, value] : block.items())
                os << " " << key << "=" << value.dump();
            os << "\n";
        }
        text = os.str();
    }
    if (report_out)
        *report_out = text;
    else
        std::cout << text;
    return tolerable ? kExitOk : kExitTolerance;
}

SweepAxis parse_sweep_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError(spec, "sweep spec must be key=lo:hi:count");
    SweepAxis axis;
    axis.key = spec.substr(0, eq);
    const std::string range = spec.substr(eq + 1);
    const auto c1 = range.find(':');
    const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError(spec, "sweep spec must be key=lo:hi:count");
    try {
        axis.lo = std::stod(range.substr(0, c1));
        axis.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
        axis.count = std::stoi(range.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError(spec, "sweep spec must be key=lo:hi:count with numeric bounds");
    }
    if (axis.count < 1) throw ConfigError(spec, "sweep count must be >= 1");
    return axis;
}

namespace {

double axis_value(const SweepAxis& axis, int i) {
    if (axis.count == 1) return axis.lo;
    return axis.lo + (axis.hi - axis.lo) * i / (axis.count - 1);
}

struct SweepRow {
    std::vector<double> params;
    MotionConstants k{};
    std::string regime = "";
    std::string orbit_class = "";
    double r0 = std::numeric_limits<double>::quiet_NaN();
    double R = std::numeric_limits<double>::quiet_NaN();
    DriftReport drift{};
    std::string status = "ok";
};

void run_sweep_row(const RunConfig& base, const std::vector<SweepAxis>& axes,
                   const std::vector<int>& idx, SweepRow& row) {
    RunConfig cfg = base;
    try {
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const double v = axis_value(axes[a], idx[a]);
            row.params.push_back(v);
            cfg.set(axes[a].key, format_double(v));
        }
        cfg.validate();
        row.k = motion_constants(cfg.chart, cfg.particle, cfg.field, cfg.initial);
        if (cfg.chart.kappa < 0 && row.k.epsilon > 0.0 && row.k.omega != 0.0) {
            const ZRegime regime = forbidden_region(row.k, cfg.chart);
            row.regime = to_string(regime.kind);
            const OrbitClass oc = classify_orbit(row.k, cfg.chart);
            row.orbit_class = to_string(oc);
            if (oc == OrbitClass::BoundedCircle) {
                const OrbitGeometry geom = circle_params(row.k, cfg.chart);
                row.r0 = geom.r0;
                row.R = geom.R;
            }
        }
        const Trajectory traj =
            integrate(cfg.chart, cfg.particle, cfg.field, cfg.initial, cfg.h, cfg.T);
        row.drift = traj.drift;
        if (!traj.completed()) row.status = to_string(traj.halt);
    } catch (const ConfigError& e) {
        row.status = std::string("config_error:") + e.key;
    } catch (const std::exception& e) {
        row.status = std::string("error:") + e.what();
    }
}

} // namespace

int cmd_sweep(const RunConfig& base, const std::vector<SweepAxis>& axes,
              const OutputOptions& out, int jobs) {
    if (axes.empty() || axes.size() > 2) {
        std::cerr << "config error [sweep]: need one or two --sweep axes\n";
        return kExitConfig;
    }
    const int n_outer = axes[0].count;
    const int n_inner = axes.size() == 2 ? axes[1].count : 1;
    const int total = n_outer * n_inner;

    std::vector<SweepRow> rows(total);
    std::atomic<int> cursor{0};
    auto worker = [&]() {
        for (int i = cursor.fetch_add(1); i < total; i = cursor.fetch_add(1)) {
            std::vector<int> idx = {i / n_inner};
            if (axes.size() == 2) idx.push_back(i % n_inner);
            run_sweep_row(base, axes, idx, rows[i]);
        }
    };
    const int n_threads = std::max(1, std::min(jobs, total));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    fs::create_directories(out.out_dir);
    const std::string path = (fs::path(out.out_dir) / "sweep.csv").string();
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open '" << path << "' for writing\n";
        return kExitConfig;
    }
    os << "index," << axes[0].key;
    if (axes.size() == 2) os << "," << axes[1].key;
    os << ",epsilon,omega,I,A,C,z_regime,orbit_class,r0,R,"
          "drift_epsilon,drift_I,drift_A,drift_C,status\n";
    for (int i = 0; i < total; ++i) {
        const SweepRow& row = rows[i];
        os << i;
        for (double p : row.params) os << ',' << format_double(p);
        for (std::size_t fill = row.params.size(); fill < axes.size(); ++fill)
            os << ',';
        if (row.status.rfind("config_error", 0) == 0 ||
            row.status.rfind("error", 0) == 0) {
            os << ",,,,,,,,,,,,," << row.status << "\n";
            continue;
        }
        os << ',' << format_double(row.k.epsilon) << ',' << format_double(row.k.omega)
           << ',' << format_double(row.k.I) << ',' << format_double(row.k.A) << ','
           << format_double(row.k.C) << ',' << row.regime << ',' << row.orbit_class
           << ',' << (std::isnan(row.r0) ? "" : format_double(row.r0)) << ','
           << (std::isnan(row.R) ? "" : format_double(row.R)) << ','
           << format_double(row.drift.epsilon) << ',' << format_double(row.drift.I)
           << ',' << format_double(row.drift.A) << ',' << format_double(row.drift.C)
           << ',' << row.status << "\n";
    }
    return kExitOk;
}

int cmd_classify(const RunConfig& cfg, const std::string& format,
                 std::string* report_out) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        return config_failure(e);
    }
    const MotionConstants k =
        motion_constants(cfg.chart, cfg.particle, cfg.field, cfg.initial);
    nlohmann::json rep;
    rep["constants"] = {{"epsilon", k.epsilon},
                        {"omega", k.omega},
                        {"I", k.I},
                        {"A", k.A},
                        {"C", k.C}};
    if (cfg.chart.kappa < 0 && k.epsilon > 0.0 && k.omega != 0.0) {
        const ZRegime regime = forbidden_region(k, cfg.chart);
        rep["z_regime"] = to_string(regime.kind);
        if (regime.kind == ZRegimeKind::Reflected) {
            rep["z_plus"] = regime.z_plus;
            rep["z_minus"] = regime.z_minus;
        }
        const OrbitClass oc = classify_orbit(k, cfg.chart);
        rep["orbit_class"] = to_string(oc);
        if (oc == OrbitClass::BoundedCircle) {
            const OrbitGeometry geom = circle_params(k, cfg.chart);
            rep["r0"] = geom.r0;
            rep["R"] = geom.R;
            if (k.A > 0.0) {
                const RadialTurningPoints tp = radial_turning_points(k, cfg.chart);
                rep["r_turn_min"] = tp.r_min;
                rep["r_turn_max"] = tp.r_max;
            }
        }
    } else {
        rep["z_regime"] = "unavailable";
        rep["orbit_class"] = "unavailable";
    }

    std::string text;
    if (format == "json") {
        text = rep.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (const auto& [key, value] : rep.items()) os << key << " = " << value.dump() << "\n";
        text = os.str();
    }
    if (report_out)
        *report_out = text;
    else
        std::cout << text;
    return kExitOk;
}

int cmd_maxwell_check(const RunConfig& cfg, const MaxwellOptions& opts,
                      std::string* report_out) {
    try {
        cfg.validate();
        if (opts.points < 3)
            throw ConfigError("grid", "maxwell-check grid needs at least 3 points");
        if (!(opts.r_hi > opts.r_lo) || !(opts.r_lo > 0.0))
            throw ConfigError("grid", "maxwell-check grid must satisfy 0 < r_lo < r_hi");
    } catch (const ConfigError& e) {
        return config_failure(e);
    }

    std::vector<double> grid(opts.points);
    for (int i = 0; i < opts.points; ++i)
        grid[i] = opts.r_lo + (opts.r_hi - opts.r_lo) * i / (opts.points - 1);

    double residual;
    if (opts.perturb == 0.0) {
        residual = maxwell_residual(cfg.chart, cfg.field, grid, opts.z);
    } else {
        const SpaceChart chart = cfg.chart;
        const FieldParams field = cfg.field;
        const double eps = opts.perturb;
        residual = maxwell_residual_potential(
            chart,
            [&](double r) {
                return vector_potential_phi(chart, field, r) + eps * r * r;
            },
            grid, opts.z);
    }

    std::ostringstream os;
    os << "max_residual = " << format_double(residual)
       << " (tol = " << format_double(opts.tol) << ", perturb = "
       << format_double(opts.perturb) << ")\n";
    if (report_out)
        *report_out = os.str();
    else
        std::cout << os.str();
    return residual <= opts.tol ? kExitOk : kExitTolerance;
}

} // namespace curved_larmor
