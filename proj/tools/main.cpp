#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curved_larmor/commands.hpp"

namespace {

using namespace curved_larmor;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir = ".";
    std::string format = "csv";
    int jobs = 1;
};

void add_common(CLI::App* app, CommonArgs& args) {
    app->add_option("--config", args.config_path, "key=value config file");
    app->add_option("--set", args.sets,
                    "override one config key, e.g. --set initial.vphi=0.2")
        ->take_all();
    app->add_option("--out", args.out_dir, "output directory");
    app->add_option("--format", args.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    app->add_option("--jobs", args.jobs, "parallel jobs (sweep)")
        ->check(CLI::PositiveNumber);
}

// Build the run configuration from file + overrides; returns false (and sets
// exit_code) on config errors.
bool load_config(const CommonArgs& args, RunConfig& cfg, int& exit_code) {
    try {
        cfg = args.config_path.empty() ? RunConfig::defaults()
                                       : RunConfig::from_file(args.config_path);
        for (const std::string& kv : args.sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError(kv, "--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error";
        if (!e.key.empty()) std::cerr << " [" << e.key << "]";
        std::cerr << ": " << e.what() << "\n";
        exit_code = kExitConfig;
        return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "curved-larmor: charged-particle motion in constant-curvature spaces "
        "under a uniform-analog magnetic field"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* sim = app.add_subcommand("simulate",
                                   "integrate a trajectory, write CSV + manifest");
    add_common(sim, args);

    auto* cmp = app.add_subcommand(
        "compare", "check the integrated trajectory against closed forms");
    add_common(cmp, args);
    CompareOptions cmp_opts;
    cmp->add_option("--tol-z", cmp_opts.tol_z, "sup-norm tolerance for z, vz");
    cmp->add_option("--tol-phi", cmp_opts.tol_phi, "sup-norm tolerance for phi, vphi");
    cmp->add_option("--tol-orbit", cmp_opts.tol_orbit_residual,
                    "normalized orbit-equation residual tolerance");
    cmp->add_flag("--phi-closed-form", cmp_opts.phi_closed_form,
                  "require the on-axis phi comparison (needs C = 0 data)");

    auto* swp = app.add_subcommand("sweep", "parameter sweep, one row per grid point");
    add_common(swp, args);
    std::vector<std::string> sweep_specs;
    swp->add_option("--sweep", sweep_specs, "axis spec key=lo:hi:count (max 2)")
        ->required()
        ->take_all();

    auto* cls = app.add_subcommand("classify",
                                   "print integrals of motion and trajectory class");
    add_common(cls, args);

    auto* mxw = app.add_subcommand("maxwell-check",
                                   "residual of the field equation on a radial grid");
    add_common(mxw, args);
    MaxwellOptions mxw_opts;
    mxw->add_option("--grid-min", mxw_opts.r_lo, "grid lower radius");
    mxw->add_option("--grid-max", mxw_opts.r_hi, "grid upper radius");
    mxw->add_option("--grid-n", mxw_opts.points, "grid point count");
    mxw->add_option("--z", mxw_opts.z, "z plane of the check");
    mxw->add_option("--perturb", mxw_opts.perturb,
                    "add perturb*r^2 to the potential before checking");
    mxw->add_option("--tol", mxw_opts.tol, "residual tolerance");

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    int exit_code = kExitOk;
    if (!load_config(args, cfg, exit_code)) return exit_code;

    if (sim->parsed()) {
        return cmd_simulate(cfg, {args.out_dir, args.format});
    }
    if (cmp->parsed()) {
        cmp_opts.format = args.format == "json" ? "json" : "text";
        return cmd_compare(cfg, cmp_opts);
    }
    if (swp->parsed()) {
        std::vector<SweepAxis> axes;
        try {
            for (const std::string& spec : sweep_specs)
                axes.push_back(parse_sweep_axis(spec));
        } catch (const ConfigError& e) {
            std::cerr << "config error [" << e.key << "]: " << e.what() << "\n";
            return kExitConfig;
        }
        return cmd_sweep(cfg, axes, {args.out_dir, args.format}, args.jobs);
    }
    if (cls->parsed()) {
        return cmd_classify(cfg, args.format == "json" ? "json" : "text");
    }
    if (mxw->parsed()) {
        return cmd_maxwell_check(cfg, mxw_opts);
    }
    return kExitConfig;
}
