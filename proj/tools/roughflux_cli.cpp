// roughflux: configuration-driven experiments on rough-flux conservation laws.
//
// Subcommands map onto the experiment kinds of the core harness; `run` loads
// a full INI config, `preset` prints or executes a named built-in one.
// Exit codes: 0 success, 1 configuration error, 2 numerical-invariant
// violation.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "roughflux/config.hpp"
#include "roughflux/errors.hpp"
#include "roughflux/experiment.hpp"
#include "roughflux/parallel.hpp"
#include "roughflux/presets.hpp"
#include "roughflux/version.hpp"

namespace {

using roughflux::config::ExperimentConfig;

const char* threads_doc =
    "Parallelism is controlled by the ROUGHFLUX_THREADS environment\n"
    "variable: a positive integer fixes the worker count for all\n"
    "data-parallel maps (ensembles, test-function catalogs, time slices);\n"
    "unset or invalid values fall back to the hardware concurrency.\n"
    "Reductions are ordered by realization index, so output files are\n"
    "byte-identical for every thread count.\n";

void add_common(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--seed", cfg.master_seed,
                    "Master seed; per-realization seeds derive from it");
    sub->add_option("--out", cfg.out_dir, "Output directory");
    sub->add_option("--ensemble", cfg.ensemble, "Number of realizations");
    sub->add_flag("!--no-svg", cfg.emit_svg, "Skip SVG plot emission");
}

void add_path(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--path-kind", cfg.path.kind,
                    "Driving path: fbm | brownian | linear | tent");
    sub->add_option("--hurst", cfg.path.hurst, "fBm Hurst parameter in (0,1)");
    sub->add_option("--steps", cfg.path.n_steps, "Path grid steps N");
    sub->add_option("--horizon", cfg.path.horizon, "Time horizon T");
    sub->add_option("--dim", cfg.path.dim, "Path dimension");
    sub->add_option("--tent-peak", cfg.path.tent_peak,
                    "Tent path peak value at T/2");
}

void add_solver(CLI::App* sub, ExperimentConfig& cfg) {
    sub->add_option("--flux", cfg.solver.flux_coeffs,
                    "Flux polynomial coefficients a0,a1,a2,...")
        ->delimiter(',');
    sub->add_option("--nx", cfg.solver.nx, "Spatial cells");
    sub->add_option("--cfl", cfg.solver.cfl, "CFL number in (0,1]");
    sub->add_flag("--godunov", cfg.solver.godunov,
                  "Godunov numerical flux instead of Engquist-Osher");
    sub->add_option("--outputs", cfg.solver.n_outputs,
                    "Uniform output times in (0,T]");
    sub->add_option("--u0", cfg.solver.u0.preset,
                    "Initial datum: riemann | sine | lacunary");
    sub->add_option("--ul", cfg.solver.u0.ul, "riemann left state");
    sub->add_option("--ur", cfg.solver.u0.ur, "riemann right state");
    sub->add_option("--x0", cfg.solver.u0.x0, "riemann jump location");
    sub->add_option("--amp", cfg.solver.u0.amp, "sine amplitude");
    sub->add_option("--freq", cfg.solver.u0.freq, "sine integer frequency");
    sub->add_option("--lambda0", cfg.solver.u0.lambda0,
                    "lacunary decay exponent");
    sub->add_option("--terms", cfg.solver.u0.terms, "lacunary octave count");
    sub->add_option("--offset", cfg.solver.u0.offset,
                    "Constant added to the datum");
    sub->add_option("--scale", cfg.solver.u0.scale,
                    "Rescale so max|u0| equals this (0 = off)");
    sub->add_option("--v-levels", cfg.estimator.v_levels,
                    "Kruzhkov levels for the entropy defect");
}

int execute(const ExperimentConfig& cfg) {
    const roughflux::experiment::RunManifest man =
        roughflux::experiment::run_experiment(cfg);
    std::cout << man.summary;
    std::cout << "wrote " << man.files.size() << " file(s) to " << cfg.out_dir
              << " in " << man.wall_seconds << " s\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for conservation laws driven by "
                 "irregular paths"};
    app.set_version_flag("--version", std::string(roughflux::version_string));
    bool schema = false, tdoc = false;
    app.add_flag("--schema", schema, "Print the config-file schema and exit");
    app.add_flag("--threads-env-doc", tdoc,
                 "Describe the threading environment variable and exit");

    // One config per subcommand so flag defaults stay independent.
    ExperimentConfig c_paths, c_irr, c_iota, c_solve, c_reg, c_exp, c_weak;

    CLI::App* paths = app.add_subcommand("paths", "Sample a path ensemble");
    c_paths.kind = "paths";
    c_paths.out_dir = "runs/paths";
    add_common(paths, c_paths);
    add_path(paths, c_paths);

    CLI::App* irr = app.add_subcommand(
        "irregularity", "Estimate the (rho,gamma)-irregularity of an ensemble");
    c_irr.kind = "irregularity";
    c_irr.out_dir = "runs/irregularity";
    add_common(irr, c_irr);
    add_path(irr, c_irr);
    irr->add_option("--a-min", c_irr.estimator.a_min, "Scan lower frequency");
    irr->add_option("--a-max", c_irr.estimator.a_max, "Scan upper frequency");
    irr->add_option("--n-a", c_irr.estimator.n_a, "Frequencies on the grid");
    irr->add_option("--gamma", c_irr.estimator.gamma,
                    "Window exponent in (0,1]");
    irr->add_option("--kappa", c_irr.estimator.kappas,
                    "Interpolation-check parameters in (0,1)")
        ->delimiter(',');

    CLI::App* iota =
        app.add_subcommand("iota", "Estimate the scaling index of an ensemble");
    c_iota.kind = "iota";
    c_iota.out_dir = "runs/iota";
    add_common(iota, c_iota);
    add_path(iota, c_iota);
    iota->add_option("--alpha", c_iota.estimator.alphas,
                     "Exponents in (-0.9,-0.1)")
        ->delimiter(',');
    iota->add_option("--lambda-min", c_iota.estimator.lambda_min,
                     "Lambda grid lower end");
    iota->add_option("--lambda-max", c_iota.estimator.lambda_max,
                     "Lambda grid upper end");
    iota->add_option("--n-lambda", c_iota.estimator.n_lambda, "Grid size");

    CLI::App* solve =
        app.add_subcommand("solve", "Evolve the rough-flux conservation law");
    c_solve.kind = "solve";
    c_solve.out_dir = "runs/solve";
    add_common(solve, c_solve);
    add_path(solve, c_solve);
    add_solver(solve, c_solve);

    CLI::App* reg = app.add_subcommand(
        "regularity", "Hurst sweep of fitted solution regularity");
    c_reg.kind = "regularity-sweep";
    c_reg.out_dir = "runs/regularity";
    add_common(reg, c_reg);
    add_path(reg, c_reg);
    add_solver(reg, c_reg);
    reg->add_option("--hurst-list", c_reg.hurst_list, "fBm arms to sweep")
        ->delimiter(',');
    reg->add_flag("--compare-linear", c_reg.compare_linear,
                  "Add a linear-path arm on identical data");
    reg->add_option("--h-levels", c_reg.estimator.h_levels,
                    "Modulus dyadic lags (0 = auto)");
    reg->add_option("--fit-lo", c_reg.estimator.fit_lo,
                    "Besov fit window lower lag (0 = default)");
    reg->add_option("--fit-hi", c_reg.estimator.fit_hi,
                    "Besov fit window upper lag (0 = default)");
    reg->add_option("--gagliardo", c_reg.estimator.gagliardo_lambdas,
                    "Seminorm cross-check orders in (0.05,0.95)")
        ->delimiter(',');

    CLI::App* expo = app.add_subcommand(
        "exponents", "Tabulate predicted regularity thresholds");
    c_exp.kind = "exponents";
    c_exp.out_dir = "runs/exponents";
    add_common(expo, c_exp);
    expo->add_option("--h-grid", c_exp.h_grid, "Hurst values to tabulate")
        ->delimiter(',');
    expo->add_option("--nu", c_exp.nu, "Nondegeneracy order >= 1");

    CLI::App* weak = app.add_subcommand(
        "weakform", "Kinetic weak-form residual with the extracted measure");
    c_weak.kind = "weakform";
    c_weak.out_dir = "runs/weakform";
    c_weak.path.kind = "linear";
    c_weak.path.n_steps = 32;
    c_weak.path.horizon = 0.25;
    add_common(weak, c_weak);
    add_path(weak, c_weak);
    add_solver(weak, c_weak);
    weak->add_option("--nx-list", c_weak.solver.nx_list,
                     "Resolution sweep (overrides --nx)")
        ->delimiter(',');

    CLI::App* runc =
        app.add_subcommand("run", "Execute an experiment from a config file");
    std::string config_file;
    runc->add_option("config", config_file, "INI config path")->required();
    bool have_run_seed = false, have_run_out = false;
    std::uint64_t run_seed = 0;
    std::string run_out;
    runc->add_option("--seed", run_seed, "Override the master seed")
        ->each([&](const std::string&) { have_run_seed = true; });
    runc->add_option("--out", run_out, "Override the output directory")
        ->each([&](const std::string&) { have_run_out = true; });

    CLI::App* pre = app.add_subcommand(
        "preset", "Print or execute a named built-in experiment");
    std::string preset_name;
    pre->add_option("name", preset_name,
                    "exp-irregularity | exp-iota | exp-regularity | "
                    "exp-det-vs-noise | exp-weakform")
        ->required();
    bool preset_run = false;
    pre->add_flag("--run", preset_run, "Execute instead of printing the config");
    bool have_pre_seed = false, have_pre_out = false;
    std::uint64_t pre_seed = 0;
    std::string pre_out;
    pre->add_option("--seed", pre_seed, "Override the master seed")
        ->each([&](const std::string&) { have_pre_seed = true; });
    pre->add_option("--out", pre_out, "Override the output directory")
        ->each([&](const std::string&) { have_pre_out = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (schema) {
            std::cout << roughflux::config::config_schema();
            return 0;
        }
        if (tdoc) {
            std::cout << threads_doc
                      << "Current worker count: " << roughflux::thread_count()
                      << "\n";
            return 0;
        }
        if (app.got_subcommand(paths)) return execute(c_paths);
        if (app.got_subcommand(irr)) return execute(c_irr);
        if (app.got_subcommand(iota)) return execute(c_iota);
        if (app.got_subcommand(solve)) return execute(c_solve);
        if (app.got_subcommand(reg)) return execute(c_reg);
        if (app.got_subcommand(expo)) return execute(c_exp);
        if (app.got_subcommand(weak)) return execute(c_weak);
        if (app.got_subcommand(runc)) {
            ExperimentConfig cfg = roughflux::config::load_config(config_file);
            if (have_run_seed) cfg.master_seed = run_seed;
            if (have_run_out) cfg.out_dir = run_out;
            return execute(cfg);
        }
        if (app.got_subcommand(pre)) {
            ExperimentConfig cfg = roughflux::config::preset(preset_name);
            if (have_pre_seed) cfg.master_seed = pre_seed;
            if (have_pre_out) cfg.out_dir = pre_out;
            if (!preset_run) {
                std::cout << roughflux::config::serialize_config(cfg);
                return 0;
            }
            return execute(cfg);
        }
        std::cout << app.help();
        return 0;
    } catch (const roughflux::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const roughflux::NumericalError& e) {
        std::cerr << "numerical invariant violated: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
