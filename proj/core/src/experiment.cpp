#include "roughflux/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "roughflux/errors.hpp"
#include "roughflux/fit.hpp"
#include "roughflux/flux.hpp"
#include "roughflux/io.hpp"
#include "roughflux/irregularity.hpp"
#include "roughflux/kinetic.hpp"
#include "roughflux/parallel.hpp"
#include "roughflux/regularity.hpp"
#include "roughflux/rng.hpp"
#include "roughflux/solver.hpp"
#include "roughflux/svg.hpp"
#include "roughflux/version.hpp"

namespace fs = std::filesystem;

namespace roughflux::experiment {

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string tag3(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03zu", i);
    return buf;
}

// Shared context: output directory, file inventory, summary accumulator.
struct Sink {
    fs::path dir;
    std::vector<FileRecord>* files;
    std::ostringstream summary;

    fs::path at(const std::string& name) const { return dir / name; }
    void record(const std::string& name, std::size_t rows) {
        files->push_back({name, rows});
    }
    void note(const std::string& line) { summary << line << "\n"; }
};

solver::Flux make_cfg_flux(const config::SolverSpec& s) {
    return solver::make_flux(s.flux_coeffs);
}

int auto_h_levels(int nx, int configured) {
    if (configured > 0) return configured;
    int l = 0;
    while ((1 << (l + 1)) <= nx) ++l; // 2^l <= nx
    return std::max(4, l - 2);
}

// ---------------------------------------------------------------- paths ----

void run_paths(const config::ExperimentConfig& cfg, Sink& sink,
               const std::vector<std::uint64_t>& seeds) {
    const std::size_t n = static_cast<std::size_t>(cfg.ensemble);
    std::vector<paths::SampledPath> ps(n);
    std::vector<paths::HoelderEstimate> hs(n);
    int levels = 3;
    while (levels < 10 &&
           (std::size_t{1} << (levels + 1)) <= cfg.path.n_steps)
        ++levels;
    const bool can_fit = (std::size_t{1} << levels) <= cfg.path.n_steps;
    parallel_for(n, [&](std::size_t i) {
        ps[i] = build_path(cfg.path, seeds[i]);
        if (can_fit) hs[i] = paths::holder_exponent(ps[i], levels);
    });

    {
        std::vector<std::string> cols = {"realization", "t"};
        for (int d = 0; d < cfg.path.dim; ++d)
            cols.push_back("w_" + std::to_string(d));
        CsvWriter csv(sink.at("paths.csv"), cols);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k <= ps[i].n_steps; ++k) {
                std::vector<std::string> cells = {std::to_string(i),
                                                  g17(ps[i].time(k))};
                for (int d = 0; d < cfg.path.dim; ++d)
                    cells.push_back(g17(ps[i].value(k, d)));
                csv.row(cells);
            }
        sink.record("paths.csv", csv.rows());
    }
    {
        CsvWriter csv(sink.at("paths_summary.csv"),
                      {"realization", "seed", "eta_hat", "fit_quality",
                       "degenerate"});
        std::vector<double> etas;
        for (std::size_t i = 0; i < n; ++i) {
            csv.row({std::to_string(i), std::to_string(seeds[i]),
                     g17(can_fit ? hs[i].eta_hat : 0.0), g17(hs[i].fit_quality),
                     (!can_fit || hs[i].degenerate) ? "1" : "0"});
            if (can_fit && !hs[i].degenerate) etas.push_back(hs[i].eta_hat);
        }
        sink.record("paths_summary.csv", csv.rows());
        sink.note("paths: " + std::to_string(n) + " realization(s) of " +
                  cfg.path.kind + ", median eta_hat = " + g17(median_of(etas)));
    }
    if (cfg.emit_svg) {
        std::vector<svg::Series> series;
        for (std::size_t i = 0; i < std::min<std::size_t>(n, 5); ++i) {
            svg::Series s;
            s.label = "realization " + std::to_string(i);
            for (std::size_t k = 0; k <= ps[i].n_steps; ++k) {
                s.x.push_back(ps[i].time(k));
                s.y.push_back(ps[i].value(k, 0));
            }
            series.push_back(std::move(s));
        }
        svg::write_line_plot(sink.at("paths.svg").string(),
                             "Sample paths (" + cfg.path.kind + ")", series, "t",
                             "w(t)");
        sink.record("paths.svg", 0);
    }
}

// --------------------------------------------------------- irregularity ----

void run_irregularity(const config::ExperimentConfig& cfg, Sink& sink,
                      const std::vector<std::uint64_t>& seeds) {
    const std::size_t n = static_cast<std::size_t>(cfg.ensemble);
    const auto& e = cfg.estimator;
    std::vector<irregularity::IrregularityReport> reps(n);
    std::vector<std::vector<irregularity::InterpolationCheck>> checks(n);
    parallel_for(n, [&](std::size_t i) {
        const paths::SampledPath p = build_path(cfg.path, seeds[i]);
        reps[i] = irregularity::estimate_rho_gamma(p, e.a_max, e.n_a, e.gamma,
                                                   e.a_min);
        for (double k : e.kappas)
            checks[i].push_back(irregularity::check_interpolation(reps[i], k));
    });

    std::vector<std::string> cols = {"realization", "seed",       "rho_hat",
                                     "gamma",       "norm",       "fit_quality",
                                     "degenerate"};
    for (double k : e.kappas) {
        cols.push_back("interp_pass_k" + g17(k));
        cols.push_back("interp_margin_k" + g17(k));
    }
    CsvWriter csv(sink.at("irregularity.csv"), cols);
    std::vector<double> rhos;
    std::size_t interp_pass = 0, interp_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> cells = {
            std::to_string(i),       std::to_string(seeds[i]),
            g17(reps[i].rho_hat),    g17(reps[i].gamma_used),
            g17(reps[i].norm_estimate), g17(reps[i].fit_quality),
            reps[i].degenerate ? "1" : "0"};
        for (const auto& ck : checks[i]) {
            cells.push_back(ck.pass ? "1" : "0");
            cells.push_back(g17(ck.margin));
            ++interp_total;
            if (ck.pass) ++interp_pass;
        }
        csv.row(cells);
        if (!reps[i].degenerate) rhos.push_back(reps[i].rho_hat);
    }
    sink.record("irregularity.csv", csv.rows());

    { // decay profile of the first realization
        const auto& r = reps[0];
        std::vector<double> decay(r.scan.a_grid.size(), 0.0);
        for (std::size_t ia = 0; ia < r.scan.a_grid.size(); ++ia)
            for (std::size_t w = 0; w < r.scan.windows.size(); ++w) {
                const auto& [s, t] = r.scan.windows[w];
                decay[ia] = std::max(decay[ia], r.scan.magnitudes[ia][w] /
                                                    std::pow(t - s, r.gamma_used));
            }
        CsvWriter scan(sink.at("scan_first.csv"), {"a", "decay"});
        for (std::size_t ia = 0; ia < r.scan.a_grid.size(); ++ia)
            scan.row({g17(r.scan.a_grid[ia]), g17(decay[ia])});
        sink.record("scan_first.csv", scan.rows());
        if (cfg.emit_svg) {
            svg::Series s;
            s.label = "D(a), realization 0";
            s.x = r.scan.a_grid;
            s.y = decay;
            svg::write_line_plot(sink.at("scan_first.svg").string(),
                                 "Oscillatory decay profile",
                                 std::vector<svg::Series>{s}, "a", "D(a)", true,
                                 true);
            sink.record("scan_first.svg", 0);
        }
    }

    std::ostringstream line;
    line << "irregularity: median rho_hat = " << g17(median_of(rhos))
         << " at gamma = " << g17(e.gamma);
    if (interp_total > 0)
        line << "; interpolation checks " << interp_pass << "/" << interp_total
             << " passed";
    sink.note(line.str());
}

// ------------------------------------------------------------------ iota ----

void run_iota(const config::ExperimentConfig& cfg, Sink& sink,
              const std::vector<std::uint64_t>& seeds) {
    const std::size_t n = static_cast<std::size_t>(cfg.ensemble);
    const auto& e = cfg.estimator;
    std::vector<irregularity::IotaEstimate> ests(n);
    parallel_for(n, [&](std::size_t i) {
        const paths::SampledPath p = build_path(cfg.path, seeds[i]);
        ests[i] = irregularity::estimate_iota(p, e.alphas, e.lambda_min,
                                              e.lambda_max, e.n_lambda);
    });

    std::vector<std::string> cols = {"realization", "seed", "iota_hat",
                                     "skipped_fraction", "flagged"};
    for (const auto& pa : ests[0].per_alpha)
        cols.push_back("iota_alpha" + g17(pa.alpha));
    CsvWriter csv(sink.at("iota.csv"), cols);
    std::vector<double> iotas;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> cells = {std::to_string(i),
                                          std::to_string(seeds[i]),
                                          g17(ests[i].iota_hat),
                                          g17(ests[i].skipped_fraction),
                                          ests[i].flagged ? "1" : "0"};
        for (const auto& pa : ests[i].per_alpha) cells.push_back(g17(pa.iota));
        csv.row(cells);
        iotas.push_back(ests[i].iota_hat);
    }
    sink.record("iota.csv", csv.rows());

    { // occupation integrals of the first realization
        const auto& r = ests[0];
        std::vector<std::string> pcols = {"lambda"};
        for (const auto& pa : r.per_alpha)
            pcols.push_back("I_alpha" + g17(pa.alpha));
        CsvWriter prof(sink.at("profile_first.csv"), pcols);
        for (std::size_t il = 0; il < r.lambda_grid.size(); ++il) {
            std::vector<std::string> cells = {g17(r.lambda_grid[il])};
            for (std::size_t ia = 0; ia < r.per_alpha.size(); ++ia)
                cells.push_back(g17(r.integrals[ia][il]));
            prof.row(cells);
        }
        sink.record("profile_first.csv", prof.rows());
        if (cfg.emit_svg) {
            std::vector<svg::Series> series;
            for (std::size_t ia = 0; ia < r.per_alpha.size(); ++ia) {
                svg::Series s;
                s.label = "alpha = " + g17(r.per_alpha[ia].alpha);
                s.x = r.lambda_grid;
                s.y = r.integrals[ia];
                series.push_back(std::move(s));
            }
            svg::write_line_plot(sink.at("profile_first.svg").string(),
                                 "Occupation integrals I(lambda; alpha)", series,
                                 "lambda", "I", true, true);
            sink.record("profile_first.svg", 0);
        }
    }
    sink.note("iota: median iota_hat = " + g17(median_of(iotas)) + " over " +
              std::to_string(n) + " realization(s)");
}

// ----------------------------------------------------------------- solve ----

void run_solve(const config::ExperimentConfig& cfg, Sink& sink,
               const std::vector<std::uint64_t>& seeds) {
    const std::size_t n = static_cast<std::size_t>(cfg.ensemble);
    const solver::Flux f = make_cfg_flux(cfg.solver);
    const std::vector<double> u0 = build_u0(cfg.solver.u0, cfg.solver.nx);
    const std::vector<double> times =
        cfg.solver.output_times.empty()
            ? uniform_output_times(cfg.path, cfg.solver.n_outputs)
            : cfg.solver.output_times;

    std::vector<solver::GridSolution> sols(n);
    std::vector<solver::KineticMeasure> measures(n);
    const auto [u_lo, u_hi] = std::minmax_element(u0.begin(), u0.end());
    const bool with_measure = *u_hi - *u_lo > 1e-12;
    parallel_for(n, [&](std::size_t i) {
        const paths::SampledPath p = build_path(cfg.path, seeds[i]);
        sols[i] = solver::solve_rough(f, p, u0, cfg.solver.nx, cfg.solver.cfl,
                                      times, cfg.solver.godunov);
        if (with_measure) {
            const std::vector<double> levels =
                solver::default_v_levels(u0, cfg.estimator.v_levels);
            measures[i] = solver::entropy_defect(sols[i], f, p, levels);
        }
    });

    CsvWriter sum(sink.at("solve_summary.csv"),
                  {"realization", "seed", "mass_drift", "u_min", "u_max",
                   "production_total", "min_density", "violation_cells"});
    const double dx = 1.0 / cfg.solver.nx;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string name = "solution_" + tag3(i) + ".csv";
        solver::write_solution_csv(sols[i], sink.at(name).string());
        sink.record(name, (sols[i].times.size() + 1) * sols[i].u0.size());
        double mass0 = 0.0, mass1 = 0.0, lo = u0[0], hi = u0[0];
        const std::span<const double> last = sols[i].at(sols[i].times.size() - 1);
        for (int j = 0; j < cfg.solver.nx; ++j) {
            mass0 += u0[static_cast<std::size_t>(j)] * dx;
            mass1 += last[static_cast<std::size_t>(j)] * dx;
            lo = std::min(lo, last[static_cast<std::size_t>(j)]);
            hi = std::max(hi, last[static_cast<std::size_t>(j)]);
        }
        double prod = 0.0, min_density = 0.0;
        std::size_t viol = 0;
        if (with_measure) {
            const std::string mname = "measure_" + tag3(i) + ".csv";
            solver::write_measure_csv(measures[i], sink.at(mname).string());
            sink.record(mname, measures[i].n_intervals() *
                                   measures[i].n_levels());
            prod = measures[i].total_variation;
            min_density = measures[i].min_density;
            viol = measures[i].violation_cells;
            violations += viol;
        }
        sum.row({std::to_string(i), std::to_string(seeds[i]),
                 g17(mass1 - mass0), g17(lo), g17(hi), g17(prod),
                 g17(min_density), std::to_string(viol)});
    }
    sink.record("solve_summary.csv", sum.rows());

    if (cfg.emit_svg) {
        std::vector<svg::Series> series;
        std::vector<double> xs(static_cast<std::size_t>(cfg.solver.nx));
        for (int j = 0; j < cfg.solver.nx; ++j)
            xs[static_cast<std::size_t>(j)] = (j + 0.5) * dx;
        svg::Series s0;
        s0.label = "t = 0";
        s0.x = xs;
        s0.y = u0;
        series.push_back(std::move(s0));
        const std::size_t stride =
            std::max<std::size_t>(1, sols[0].times.size() / 5);
        for (std::size_t ti = stride - 1; ti < sols[0].times.size();
             ti += stride) {
            svg::Series s;
            s.label = "t = " + g17(sols[0].times[ti]);
            s.x = xs;
            const std::span<const double> slice = sols[0].at(ti);
            s.y.assign(slice.begin(), slice.end());
            series.push_back(std::move(s));
        }
        svg::write_line_plot(sink.at("solution.svg").string(),
                             "Rough-flux evolution (realization 0)", series, "x",
                             "u");
        sink.record("solution.svg", 0);
    }

    sink.note("solve: " + std::to_string(n) + " realization(s), nx = " +
              std::to_string(cfg.solver.nx) +
              (with_measure
                   ? ", production total (realization 0) = " +
                         g17(measures[0].total_variation)
                   : ", constant datum (no measure)"));
    if (violations > 0)
        throw NumericalError("entropy production below tolerance in " +
                             std::to_string(violations) + " cell(s)");
}

// ------------------------------------------------------ regularity sweep ----

struct Arm {
    std::string label;
    bool is_fbm = false;
    double hurst = 0.0;
    config::PathSpec path;
    bool deterministic = false;
};

void run_regularity(const config::ExperimentConfig& cfg, Sink& sink,
                    const std::vector<std::uint64_t>& seeds) {
    const solver::Flux f = make_cfg_flux(cfg.solver);
    const std::vector<double> u0 = build_u0(cfg.solver.u0, cfg.solver.nx);
    const std::vector<double> times =
        cfg.solver.output_times.empty()
            ? uniform_output_times(cfg.path, cfg.solver.n_outputs)
            : cfg.solver.output_times;
    const int h_levels = auto_h_levels(cfg.solver.nx, cfg.estimator.h_levels);

    std::vector<Arm> arms;
    if (cfg.path.kind == "fbm") {
        std::vector<double> hs =
            cfg.hurst_list.empty() ? std::vector<double>{cfg.path.hurst}
                                   : cfg.hurst_list;
        for (double H : hs) {
            Arm a;
            a.label = "fbm_H" + g17(H);
            a.is_fbm = true;
            a.hurst = H;
            a.path = cfg.path;
            a.path.hurst = H;
            arms.push_back(a);
        }
    } else {
        Arm a;
        a.label = cfg.path.kind;
        a.path = cfg.path;
        a.deterministic = true;
        arms.push_back(a);
    }
    if (cfg.compare_linear) {
        Arm a;
        a.label = "linear";
        a.path = cfg.path;
        a.path.kind = "linear";
        a.deterministic = true;
        arms.push_back(a);
    }

    struct Cell {
        double lambda_hat = 0.0, fit_quality = 0.0, field_l1 = 0.0;
        bool smooth = false;
        std::vector<double> gagl_curve, gagl_direct;
    };
    const std::size_t n_real = static_cast<std::size_t>(cfg.ensemble);
    std::vector<std::vector<Cell>> cells(arms.size());
    std::vector<regularity::ModulusCurve> first_curve(arms.size());

    for (std::size_t ai = 0; ai < arms.size(); ++ai) {
        const Arm& arm = arms[ai];
        const std::size_t reps = arm.deterministic ? 1 : n_real;
        cells[ai].resize(reps);
        parallel_for(reps, [&](std::size_t i) {
            const paths::SampledPath p = build_path(arm.path, seeds[i]);
            const solver::GridSolution sol =
                solver::solve_rough(f, p, u0, cfg.solver.nx, cfg.solver.cfl,
                                    times, cfg.solver.godunov);
            const regularity::ModulusCurve curve =
                regularity::time_averaged_modulus(sol, h_levels);
            const regularity::RegularityReport rep =
                (cfg.estimator.fit_lo > 0.0 || cfg.estimator.fit_hi > 0.0)
                    ? regularity::besov_exponent(curve, cfg.estimator.fit_lo,
                                                 cfg.estimator.fit_hi)
                    : regularity::besov_exponent(curve);
            Cell c;
            c.lambda_hat = rep.lambda_hat;
            c.fit_quality = rep.fit_quality;
            c.field_l1 = curve.field_l1;
            c.smooth = rep.smooth_field;
            if (!cfg.estimator.gagliardo_lambdas.empty()) {
                // Cross-check both quadrature routes on the final slice; the
                // curve route needs every lag to resolve intra-octave
                // structure of evolved fields.
                const std::span<const double> last =
                    sol.at(sol.times.size() - 1);
                const regularity::ModulusCurve final_curve =
                    regularity::l1_modulus_dense(last);
                for (double gl : cfg.estimator.gagliardo_lambdas) {
                    c.gagl_curve.push_back(
                        regularity::gagliardo_from_curve(final_curve, gl));
                    c.gagl_direct.push_back(
                        regularity::gagliardo_seminorm(last, gl));
                }
            }
            cells[ai][i] = std::move(c);
            if (i == 0) first_curve[ai] = curve;
        });
    }

    std::vector<std::string> cols = {"arm",     "hurst",       "realization",
                                     "seed",    "lambda_hat",  "fit_quality",
                                     "field_l1", "smooth_field"};
    for (double gl : cfg.estimator.gagliardo_lambdas) {
        cols.push_back("gagliardo_curve_l" + g17(gl));
        cols.push_back("gagliardo_direct_l" + g17(gl));
    }
    CsvWriter csv(sink.at("regularity.csv"), cols);
    CsvWriter sum(sink.at("regularity_summary.csv"),
                  {"arm", "hurst", "median_lambda_hat", "predicted_lambda"});
    for (std::size_t ai = 0; ai < arms.size(); ++ai) {
        const Arm& arm = arms[ai];
        std::vector<double> lams;
        for (std::size_t i = 0; i < cells[ai].size(); ++i) {
            const Cell& c = cells[ai][i];
            std::vector<std::string> row = {
                arm.label,
                arm.is_fbm ? g17(arm.hurst) : "",
                std::to_string(i),
                arm.deterministic ? "0" : std::to_string(seeds[i]),
                g17(c.lambda_hat),
                g17(c.fit_quality),
                g17(c.field_l1),
                c.smooth ? "1" : "0"};
            for (std::size_t g = 0; g < c.gagl_curve.size(); ++g) {
                row.push_back(g17(c.gagl_curve[g]));
                row.push_back(g17(c.gagl_direct[g]));
            }
            csv.row(row);
            lams.push_back(c.lambda_hat);
        }
        const double med = median_of(lams);
        sum.row({arm.label, arm.is_fbm ? g17(arm.hurst) : "", g17(med),
                 arm.is_fbm
                     ? g17(regularity::predicted_lambda_fbm(arm.hurst, 1.0))
                     : ""});
        sink.note("regularity: arm " + arm.label + " median lambda_hat = " +
                  g17(med) +
                  (arm.is_fbm ? " (predicted " +
                                    g17(regularity::predicted_lambda_fbm(
                                        arm.hurst, 1.0)) +
                                    ")"
                              : ""));
    }
    sink.record("regularity.csv", csv.rows());
    sink.record("regularity_summary.csv", sum.rows());

    regularity::write_modulus_csv(first_curve[0],
                                  sink.at("modulus_first.csv").string());
    sink.record("modulus_first.csv", first_curve[0].h.size());

    if (cfg.emit_svg) {
        std::vector<svg::Series> series;
        svg::Series meas, pred;
        meas.label = "median lambda_hat";
        pred.label = "predicted 1/(1+2H)";
        for (std::size_t ai = 0; ai < arms.size(); ++ai)
            if (arms[ai].is_fbm) {
                std::vector<double> lams;
                for (const Cell& c : cells[ai]) lams.push_back(c.lambda_hat);
                meas.x.push_back(arms[ai].hurst);
                meas.y.push_back(median_of(lams));
            }
        if (meas.x.size() >= 1) {
            const double h_lo = *std::min_element(meas.x.begin(), meas.x.end());
            const double h_hi = *std::max_element(meas.x.begin(), meas.x.end());
            for (int k = 0; k <= 64; ++k) {
                const double H = h_lo + (h_hi - h_lo) * k / 64.0;
                pred.x.push_back(H);
                pred.y.push_back(regularity::predicted_lambda_fbm(H, 1.0));
            }
            series.push_back(std::move(meas));
            series.push_back(std::move(pred));
            svg::write_line_plot(sink.at("lambda_vs_hurst.svg").string(),
                                 "Fitted regularity vs Hurst parameter", series,
                                 "H", "lambda", false, false);
            sink.record("lambda_vs_hurst.svg", 0);
        }
        std::vector<svg::Series> mods;
        for (std::size_t ai = 0; ai < arms.size(); ++ai) {
            svg::Series s;
            s.label = arms[ai].label;
            s.x = first_curve[ai].h;
            s.y = first_curve[ai].omega;
            mods.push_back(std::move(s));
        }
        svg::write_line_plot(sink.at("modulus.svg").string(),
                             "Time-averaged L1 modulus (realization 0)", mods,
                             "h", "omega(h)", true, true);
        sink.record("modulus.svg", 0);
    }
}

// ------------------------------------------------------------- exponents ----

void run_exponents(const config::ExperimentConfig& cfg, Sink& sink) {
    std::vector<double> grid = cfg.h_grid;
    if (grid.empty())
        for (int k = 1; k <= 9; ++k) grid.push_back(0.1 * k);
    CsvWriter csv(sink.at("exponents.csv"),
                  {"H", "nu", "predicted_lambda_fbm", "s_star_eta1"});
    std::ostringstream table;
    table << "exponents (nu = " << g17(cfg.nu) << "):";
    for (double H : grid) {
        const double lam = regularity::predicted_lambda_fbm(H, cfg.nu);
        const double sstar =
            regularity::predicted_s_star(1.0, std::max(H, 0.5));
        csv.row({g17(H), g17(cfg.nu), g17(lam), g17(sstar)});
        char buf[96];
        std::snprintf(buf, sizeof(buf), "\n  H = %.3f  lambda = %.6f  s* = %.6f",
                      H, lam, sstar);
        table << buf;
    }
    sink.record("exponents.csv", csv.rows());
    sink.note(table.str());
    if (cfg.emit_svg) {
        svg::Series s;
        s.label = "predicted lambda (nu = " + g17(cfg.nu) + ")";
        for (int k = 0; k <= 128; ++k) {
            const double H = 0.02 + (0.98 - 0.02) * k / 128.0;
            s.x.push_back(H);
            s.y.push_back(regularity::predicted_lambda_fbm(H, cfg.nu));
        }
        svg::write_line_plot(sink.at("exponents.svg").string(),
                             "Predicted regularity threshold",
                             std::vector<svg::Series>{s}, "H", "lambda");
        sink.record("exponents.svg", 0);
    }
}

// -------------------------------------------------------------- weakform ----

void run_weakform(const config::ExperimentConfig& cfg, Sink& sink,
                  const std::vector<std::uint64_t>& seeds) {
    const solver::Flux f = make_cfg_flux(cfg.solver);
    const paths::SampledPath p = build_path(cfg.path, seeds[0]);
    // Outputs at every path step so measure intervals align with increments.
    std::vector<double> times;
    for (std::size_t k = 1; k <= p.n_steps; ++k) times.push_back(p.time(k));
    const double t_eval = p.horizon;

    std::vector<int> nx_values =
        cfg.solver.nx_list.empty() ? std::vector<int>{cfg.solver.nx}
                                   : cfg.solver.nx_list;

    CsvWriter sum(sink.at("weakform_summary.csv"),
                  {"nx", "dx", "max_residual", "max_residual_no_measure",
                   "improvement_factor", "truncation_fraction",
                   "production_total", "min_density", "violation_cells"});
    std::vector<double> log_dx, log_res;
    std::vector<double> sweep_nx, sweep_with, sweep_without;
    std::size_t violations = 0;
    for (int nx : nx_values) {
        const std::vector<double> u0 = build_u0(cfg.solver.u0, nx);
        const solver::GridSolution sol = solver::solve_rough(
            f, p, u0, nx, cfg.solver.cfl, times, cfg.solver.godunov);
        const std::vector<double> levels =
            solver::default_v_levels(u0, cfg.estimator.v_levels);
        const solver::KineticMeasure m = solver::entropy_defect(sol, f, p, levels);
        const double dv = m.dv;
        const double band_lo = m.v_levels.front() - 0.5 * dv;
        const double band_hi = m.v_levels.back() + 0.5 * dv;
        const std::vector<kinetic::TestFunction> catalog =
            kinetic::default_catalog(band_lo, band_hi);
        const kinetic::WeakFormReport rep =
            kinetic::weak_form_residual(sol, &m, p, f, t_eval, catalog);

        const std::string name = "weakform_nx" + std::to_string(nx) + ".csv";
        kinetic::write_weakform_csv(rep, sink.at(name).string());
        sink.record(name, catalog.size() + 1);
        const std::string mname = "measure_nx" + std::to_string(nx) + ".csv";
        solver::write_measure_csv(m, sink.at(mname).string());
        sink.record(mname, m.n_intervals() * m.n_levels());

        const double ratio = rep.max_residual > 0.0
                                 ? rep.max_residual_no_measure / rep.max_residual
                                 : 0.0;
        sum.row({std::to_string(nx), g17(1.0 / nx), g17(rep.max_residual),
                 g17(rep.max_residual_no_measure), g17(ratio),
                 g17(rep.truncation_fraction), g17(m.total_variation),
                 g17(m.min_density), std::to_string(m.violation_cells)});
        violations += m.violation_cells;
        sweep_nx.push_back(nx);
        sweep_with.push_back(rep.max_residual);
        sweep_without.push_back(rep.max_residual_no_measure);
        if (rep.max_residual > 0.0) {
            log_dx.push_back(std::log(1.0 / nx));
            log_res.push_back(std::log(rep.max_residual));
        }
        sink.note("weakform: nx = " + std::to_string(nx) + " max residual " +
                  g17(rep.max_residual) + " (no measure " +
                  g17(rep.max_residual_no_measure) + ", factor " + g17(ratio) +
                  ")");
    }
    sink.record("weakform_summary.csv", sum.rows());
    if (log_dx.size() >= 2) {
        const LinFit fit = linear_fit(log_dx, log_res);
        sink.note("weakform: residual convergence rate " + g17(fit.slope) +
                  " (R^2 = " + g17(fit.r2) + ")");
    }
    if (cfg.emit_svg && nx_values.size() >= 2) {
        svg::Series with_m, without_m;
        with_m.label = "with measure";
        with_m.x = sweep_nx;
        with_m.y = sweep_with;
        without_m.label = "measure dropped";
        without_m.x = sweep_nx;
        without_m.y = sweep_without;
        svg::write_line_plot(sink.at("weakform.svg").string(),
                             "Kinetic weak-form residual vs resolution",
                             std::vector<svg::Series>{with_m, without_m}, "nx",
                             "max residual", true, true);
        sink.record("weakform.svg", 0);
    }
    if (violations > 0)
        throw NumericalError("entropy production below tolerance in " +
                             std::to_string(violations) + " cell(s)");
}

} // namespace

std::vector<double> build_u0(const config::U0Spec& u, int nx) {
    if (nx < 2) throw ConfigError("build_u0: nx must be >= 2");
    std::vector<double> out(static_cast<std::size_t>(nx));
    const double dx = 1.0 / nx;
    for (int j = 0; j < nx; ++j) {
        const double x = (j + 0.5) * dx;
        double v = 0.0;
        if (u.preset == "riemann") {
            v = x < u.x0 ? u.ul : u.ur;
        } else if (u.preset == "sine") {
            v = u.amp * std::sin(2.0 * std::numbers::pi * u.freq * x);
        } else if (u.preset == "lacunary") {
            for (int k = 1; k <= u.terms; ++k)
                v += std::pow(2.0, -u.lambda0 * k) *
                     std::cos(2.0 * std::numbers::pi * std::pow(2.0, k) * x);
        } else {
            throw ConfigError("build_u0: unknown preset '" + u.preset + "'");
        }
        out[static_cast<std::size_t>(j)] = v;
    }
    if (u.scale > 0.0) {
        double m = 0.0;
        for (double v : out) m = std::max(m, std::abs(v));
        if (m > 0.0)
            for (double& v : out) v *= u.scale / m;
    }
    for (double& v : out) v += u.offset;
    return out;
}

paths::SampledPath build_path(const config::PathSpec& ps, std::uint64_t seed) {
    if (ps.kind == "fbm")
        return paths::generate_fbm(ps.hurst, ps.dim, ps.n_steps, ps.horizon,
                                   seed);
    if (ps.kind == "brownian")
        return paths::generate_brownian(ps.dim, ps.n_steps, ps.horizon, seed);
    if (ps.kind == "linear")
        return paths::generate_linear(ps.n_steps, ps.horizon, ps.dim);
    if (ps.kind == "tent") {
        const std::size_t n = ps.n_steps;
        std::vector<double> vals((n + 1) * static_cast<std::size_t>(ps.dim));
        for (std::size_t k = 0; k <= n; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(n);
            const double w = ps.tent_peak * (1.0 - std::abs(2.0 * s - 1.0));
            for (int d = 0; d < ps.dim; ++d)
                vals[k * static_cast<std::size_t>(ps.dim) +
                     static_cast<std::size_t>(d)] = w;
        }
        return paths::generate_custom(std::move(vals), ps.dim, ps.horizon);
    }
    throw ConfigError("build_path: unknown kind '" + ps.kind + "'");
}

std::vector<double> uniform_output_times(const config::PathSpec& ps,
                                         int n_outputs) {
    // Output times must land on the path grid; emit every (N / n)-th step.
    const std::size_t N = ps.n_steps;
    const std::size_t every =
        std::max<std::size_t>(1, N / static_cast<std::size_t>(n_outputs));
    std::vector<double> times;
    for (std::size_t k = every; k <= N; k += every)
        times.push_back(static_cast<double>(k) * ps.horizon /
                        static_cast<double>(N));
    if (times.empty() || times.back() < ps.horizon - 1e-12 * ps.horizon)
        times.push_back(ps.horizon);
    return times;
}

RunManifest run_experiment(const config::ExperimentConfig& cfg) {
    config::validate(cfg);
    RunManifest man;
    man.cfg = cfg;
    man.version = version_string;
    for (int i = 0; i < cfg.ensemble; ++i)
        man.seeds.push_back(derive_seed(cfg.master_seed,
                                        static_cast<std::uint64_t>(i)));

    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec || !fs::is_directory(cfg.out_dir))
        throw ConfigError("cannot create output directory: " + cfg.out_dir);

    Sink sink;
    sink.dir = cfg.out_dir;
    sink.files = &man.files;

    auto write_manifest = [&](bool complete, const std::string& error) {
        nlohmann::json j;
        j["tool"] = "roughflux";
        j["version"] = man.version;
        j["kind"] = cfg.kind;
        j["label"] = cfg.label;
        j["complete"] = complete;
        j["wall_seconds"] = man.wall_seconds;
        j["master_seed"] = cfg.master_seed;
        j["seeds"] = man.seeds;
        j["config"] = config::serialize_config(cfg);
        nlohmann::json files = nlohmann::json::array();
        for (const FileRecord& r : man.files)
            files.push_back({{"name", r.name}, {"rows", r.rows}});
        j["files"] = files;
        j["summary"] = man.summary;
        if (!error.empty()) j["error"] = error;
        std::ofstream out(sink.at("manifest.json"));
        if (!out)
            throw ConfigError("cannot write manifest in " + cfg.out_dir);
        out << j.dump(2) << "\n";
    };

    { // config echo, reusable with `run <out>/config.ini`
        std::ofstream out(sink.at("config.ini"));
        if (!out) throw ConfigError("cannot write config echo in " + cfg.out_dir);
        out << config::serialize_config(cfg);
        man.files.push_back({"config.ini", 0});
    }
    write_manifest(false, "");

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (cfg.kind == "paths") run_paths(cfg, sink, man.seeds);
        else if (cfg.kind == "irregularity") run_irregularity(cfg, sink, man.seeds);
        else if (cfg.kind == "iota") run_iota(cfg, sink, man.seeds);
        else if (cfg.kind == "solve") run_solve(cfg, sink, man.seeds);
        else if (cfg.kind == "regularity-sweep") run_regularity(cfg, sink, man.seeds);
        else if (cfg.kind == "exponents") run_exponents(cfg, sink);
        else if (cfg.kind == "weakform") run_weakform(cfg, sink, man.seeds);
        else throw ConfigError("unknown experiment kind '" + cfg.kind + "'");
    } catch (const std::exception& e) {
        man.summary = sink.summary.str();
        man.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        man.files.push_back({"manifest.json", 0});
        write_manifest(false, e.what());
        throw;
    }
    man.summary = sink.summary.str();
    man.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    man.files.push_back({"manifest.json", 0});
    man.complete = true;
    write_manifest(true, "");
    return man;
}

} // namespace roughflux::experiment
