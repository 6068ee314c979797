// Acceptance gate: twelve quantitative criteria at frozen parameters, one
// [PASS]/[FAIL] line each. Run all with no arguments or a single one with
// --criterion N; the exit status is 0 only if every selected criterion holds.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "roughflux/config.hpp"
#include "roughflux/experiment.hpp"
#include "roughflux/irregularity.hpp"
#include "roughflux/kinetic.hpp"
#include "roughflux/path.hpp"
#include "roughflux/regularity.hpp"
#include "roughflux/rng.hpp"
#include "roughflux/solver.hpp"

using namespace roughflux;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> sine_field(int nx, double offset, double amp) {
    std::vector<double> u(static_cast<std::size_t>(nx));
    for (int j = 0; j < nx; ++j)
        u[static_cast<std::size_t>(j)] =
            offset + amp * std::sin(2.0 * std::numbers::pi * (j + 0.5) / nx);
    return u;
}

std::vector<double> uniform_times(std::size_t count, double horizon) {
    std::vector<double> t;
    for (std::size_t k = 1; k <= count; ++k)
        t.push_back(horizon * static_cast<double>(k) / static_cast<double>(count));
    return t;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += std::abs(a[j] - b[j]);
    return acc / static_cast<double>(a.size());
}

// Every kinetic measure extracted anywhere in the gate is tracked here so
// criterion 12 can assert the global nonnegativity floor.
struct MeasureLedger {
    double worst_ratio = 0.0; // most negative min_density / max_density
    std::size_t tracked = 0;

    void track(const solver::KineticMeasure& m) {
        double max_density = 0.0;
        for (double d : m.density) max_density = std::max(max_density, d);
        if (max_density > 0.0)
            worst_ratio = std::min(worst_ratio, m.min_density / max_density);
        ++tracked;
    }
};
MeasureLedger ledger;

// ---------------------------------------------------------------------------

Outcome criterion_1() {
    double worst = 0.0;
    for (double hurst : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5})
        worst = std::max(worst, std::abs(regularity::predicted_lambda_fbm(hurst, 1.0) -
                                         1.0 / (1.0 + 2.0 * hurst)));
    const bool pass = regularity::predicted_lambda_fbm(0.5, 1.0) == 0.5 &&
                      regularity::predicted_s_star(0.5, 0.5) == 0.5 &&
                      worst <= 1e-15;
    return {pass, fmt("formula grid max deviation %.1e, s*(1/2,1/2) = %.17g",
                      worst, regularity::predicted_s_star(0.5, 0.5))};
}

Outcome criterion_2() {
    const std::size_t n_seeds = 10000, n_steps = 1024;
    const double pairs[5][2] = {
        {0.25, 0.25}, {0.5, 0.5}, {0.75, 0.75}, {0.25, 0.5}, {0.5, 0.75}};
    double worst = 0.0;
    for (double hurst : {0.25, 0.5, 0.75}) {
        double acc[5] = {0, 0, 0, 0, 0};
        for (std::size_t i = 0; i < n_seeds; ++i) {
            const auto p =
                paths::generate_fbm(hurst, 1, n_steps, 1.0, derive_seed(314, i));
            for (int q = 0; q < 5; ++q)
                acc[q] += p.value(static_cast<std::size_t>(pairs[q][0] * n_steps), 0) *
                          p.value(static_cast<std::size_t>(pairs[q][1] * n_steps), 0);
        }
        for (int q = 0; q < 5; ++q) {
            const double s = pairs[q][0], t = pairs[q][1];
            const double exact =
                0.5 * (std::pow(s, 2 * hurst) + std::pow(t, 2 * hurst) -
                       std::pow(t - s, 2 * hurst));
            worst = std::max(
                worst, std::abs(acc[q] / static_cast<double>(n_seeds) - exact) /
                           exact);
        }
    }
    return {worst <= 0.05,
            fmt("covariance worst relative error %.3f%% over 5 pairs x 3 H "
                "(bound 5%%)",
                100.0 * worst)};
}

Outcome criterion_3() {
    const std::array<double, 1> alpha_lin = {-0.5};
    const auto lin = irregularity::estimate_iota(paths::generate_linear(8192, 1.0),
                                                 alpha_lin, 4.0, 1024.0);
    const bool lin_ok = lin.iota_hat >= 0.95 && lin.iota_hat <= 1.05;

    const std::array<double, 3> alphas = {-0.3, -0.5, -0.7};
    double worst = 0.0;
    for (double hurst : {0.25, 0.5, 0.75}) {
        std::vector<double> iotas;
        for (std::size_t i = 0; i < 100; ++i) {
            const auto p =
                paths::generate_fbm(hurst, 1, 8192, 1.0, derive_seed(11, i));
            iotas.push_back(irregularity::estimate_iota(p, alphas).iota_hat);
        }
        worst = std::max(worst, std::abs(median(iotas) - hurst));
    }
    return {lin_ok && worst <= 0.1,
            fmt("linear iota %.4f (band [0.95,1.05]); fbm median |iota-H| "
                "worst %.4f (bound 0.1)",
                lin.iota_hat, worst)};
}

Outcome criterion_4() {
    std::vector<double> rhos;
    for (std::size_t i = 0; i < 100; ++i) {
        const auto p =
            paths::generate_fbm(0.5, 1, 1 << 14, 1.0, derive_seed(21, i));
        rhos.push_back(irregularity::estimate_rho_gamma(p, 256.0, 16, 0.55).rho_hat);
    }
    const double med = median(rhos);
    const auto lin = irregularity::estimate_rho_gamma(
        paths::generate_linear(16384, 1.0), 256.0, 16, 0.5);
    const bool pass = med >= 0.8 && med <= 1.2 && lin.rho_hat >= 0.4 &&
                      lin.rho_hat <= 0.6;
    return {pass, fmt("fbm median rho %.4f (band [0.8,1.2]); linear rho %.4f "
                      "(band [0.4,0.6])",
                      med, lin.rho_hat)};
}

Outcome criterion_5() {
    std::size_t passed = 0, total = 0;
    double worst_margin = 1e300;
    for (std::size_t i = 0; i < 100; ++i) {
        const auto p =
            paths::generate_fbm(0.5, 1, 1 << 13, 1.0, derive_seed(77, i));
        const auto rep = irregularity::estimate_rho_gamma(p);
        for (double kappa : {0.25, 0.5, 0.75}) {
            const auto chk = irregularity::check_interpolation(rep, kappa);
            ++total;
            passed += chk.pass ? 1 : 0;
            worst_margin = std::min(worst_margin, chk.margin);
        }
    }
    return {passed == total,
            fmt("interpolation inequality %zu/%zu, worst margin %+.2e", passed,
                total, worst_margin)};
}

Outcome criterion_6() {
    const int ng = 257;
    std::vector<double> ones(ng, 1.0), a_of_v(ng);
    for (int i = 0; i < ng; ++i)
        a_of_v[static_cast<std::size_t>(i)] = static_cast<double>(i) / (ng - 1);
    std::vector<double> ns;
    for (double n = 2.0; n <= 256.0; n += 2.0) ns.push_back(n);
    const auto chk = irregularity::check_averaging_bound(ones, ones, a_of_v, 0.0,
                                                         1.0, 0.5, 1.0, ns);
    const double worst = *std::max_element(chk.ratios.begin(), chk.ratios.end());
    return {worst <= 4.0,
            fmt("averaging ratio sup %.3f over n in [2,256] (bound 4)", worst)};
}

Outcome criterion_7() {
    const auto f = solver::burgers();
    // Constants.
    double const_dev = 0.0;
    {
        const auto p = paths::generate_fbm(0.4, 1, 128, 1.0, 11);
        const std::vector<double> u0(256, 0.37);
        const auto sol = solver::solve_rough(f, p, u0, 256, 0.5, uniform_times(4, 1.0));
        for (double v : sol.u) const_dev = std::max(const_dev, std::abs(v - 0.37));
    }
    // Mass and max principle.
    double mass_dev = 0.0, range_dev = 0.0;
    {
        const int nx = 256;
        const auto p = paths::generate_brownian(1, 200, 1.0, 13);
        const auto u0 = sine_field(nx, 0.1, 0.4);
        const double mass0 = std::accumulate(u0.begin(), u0.end(), 0.0);
        const auto [lo_it, hi_it] = std::minmax_element(u0.begin(), u0.end());
        const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(8, 1.0));
        for (std::size_t ti = 0; ti < sol.times.size(); ++ti) {
            const auto u = sol.at(ti);
            mass_dev = std::max(
                mass_dev,
                std::abs(std::accumulate(u.begin(), u.end(), 0.0) - mass0) / nx);
            for (double v : u)
                range_dev = std::max(range_dev,
                                     std::max(*lo_it - v, v - *hi_it));
        }
    }
    // Contraction on 20 random pairs.
    double excess = -1e300;
    {
        const int nx = 128;
        const auto p = paths::generate_fbm(0.4, 1, 128, 1.0, 99);
        const auto times = uniform_times(4, 1.0);
        NormalSampler rng(derive_seed(5, 0));
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> a(nx), b(nx);
            for (int j = 0; j < nx; ++j) {
                a[static_cast<std::size_t>(j)] = 0.5 * rng();
                b[static_cast<std::size_t>(j)] = 0.5 * rng();
            }
            const auto sa = solver::solve_rough(f, p, a, nx, 0.5, times);
            const auto sb = solver::solve_rough(f, p, b, nx, 0.5, times);
            const double d0 = l1_distance(a, b);
            for (std::size_t ti = 0; ti < times.size(); ++ti)
                excess = std::max(excess,
                                  l1_distance(sa.at(ti), sb.at(ti)) - d0);
        }
    }
    // Riemann shock position.
    double shock_err = 1e300;
    {
        const int nx = 1024;
        std::vector<double> u0(nx);
        for (int j = 0; j < nx; ++j)
            u0[static_cast<std::size_t>(j)] = ((j + 0.5) / nx < 0.25) ? 1.0 : 0.0;
        const auto p = paths::generate_linear(64, 0.5);
        const auto sol =
            solver::solve_rough(f, p, u0, nx, 0.5, std::vector<double>{0.5});
        const auto uf = sol.at(0);
        for (int j = 0; j + 1 < nx; ++j) {
            const double xj = (j + 0.5) / nx;
            if (xj > 0.3 && uf[static_cast<std::size_t>(j)] >= 0.5 &&
                uf[static_cast<std::size_t>(j + 1)] < 0.5) {
                const double pos =
                    xj + (uf[static_cast<std::size_t>(j)] - 0.5) /
                             (uf[static_cast<std::size_t>(j)] -
                              uf[static_cast<std::size_t>(j + 1)]) /
                             nx;
                shock_err = std::abs(pos - 0.5);
                break;
            }
        }
    }
    const bool pass = const_dev <= 1e-12 && mass_dev <= 1e-12 &&
                      range_dev <= 1e-12 && excess <= 1e-10 &&
                      shock_err <= 2.0 / 1024;
    return {pass, fmt("const %.1e mass %.1e range %.1e contraction %+.1e "
                      "shock %.2e (bound %.2e)",
                      const_dev, mass_dev, range_dev, excess, shock_err,
                      2.0 / 1024)};
}

Outcome criterion_8() {
    const auto f = solver::burgers();
    std::vector<double> errs;
    for (int nx : {256, 512, 1024}) {
        std::vector<double> tent(65);
        for (std::size_t k = 0; k <= 64; ++k) {
            const double s = static_cast<double>(k) / 64.0;
            tent[k] = 0.3 * (1.0 - std::abs(2.0 * s - 1.0));
        }
        const auto p = paths::generate_custom(tent, 1, 1.0);
        const auto u0 = sine_field(nx, 0.0, 0.1);
        const auto sol =
            solver::solve_rough(f, p, u0, nx, 0.5, std::vector<double>{1.0});
        errs.push_back(l1_distance(sol.at(0), u0));
    }
    const double r1 = std::log2(errs[0] / errs[1]);
    const double r2 = std::log2(errs[1] / errs[2]);
    return {r1 >= 0.8 && r2 >= 0.8,
            fmt("reversibility rates %.3f, %.3f over nx 256->1024 (bound 0.8)",
                r1, r2)};
}

Outcome criterion_9() {
    const auto f = solver::burgers();
    // Kinetic identity int chi dv = u.
    double chi_dev = 0.0;
    {
        const auto u = sine_field(128, 0.05, 0.4);
        std::vector<double> levels(200);
        for (int l = 0; l < 200; ++l)
            levels[static_cast<std::size_t>(l)] = -0.5 + (l + 0.5) / 200.0;
        const auto avg =
            kinetic::velocity_average(u, [](double) { return 1.0; }, levels);
        for (std::size_t j = 0; j < u.size(); ++j)
            chi_dev = std::max(chi_dev, std::abs(avg[j] - u[j]));
    }
    // Pre-shock residual rate under refinement.
    std::vector<double> residuals;
    for (int nx : {256, 512, 1024, 2048}) {
        const auto p = paths::generate_linear(48, 0.3);
        const auto u0 = sine_field(nx, 0.2, 0.15);
        const auto times = uniform_times(48, 0.3);
        const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, times);
        const auto levels = solver::default_v_levels(u0, 64);
        const auto m = solver::entropy_defect(sol, f, p, levels);
        ledger.track(m);
        const double dv = levels[1] - levels[0];
        const auto cat = kinetic::default_catalog(levels.front() - 0.5 * dv,
                                                  levels.back() + 0.5 * dv);
        residuals.push_back(
            kinetic::weak_form_residual(sol, &m, p, f, 0.3, cat).max_residual);
    }
    double min_rate = 1e300;
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i)
        min_rate = std::min(min_rate, std::log2(residuals[i] / residuals[i + 1]));
    // Shock-case improvement from the extracted measure at nx = 2048.
    double factor = 0.0;
    {
        const int nx = 2048;
        std::vector<double> u0(nx);
        for (int j = 0; j < nx; ++j)
            u0[static_cast<std::size_t>(j)] = ((j + 0.5) / nx < 0.5) ? 0.5 : -0.5;
        const auto p = paths::generate_linear(32, 1.0);
        const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(8, 1.0));
        const auto levels = solver::default_v_levels(u0, 64);
        const auto m = solver::entropy_defect(sol, f, p, levels);
        ledger.track(m);
        const double dv = levels[1] - levels[0];
        const auto cat = kinetic::default_catalog(levels.front() - 0.5 * dv,
                                                  levels.back() + 0.5 * dv);
        const auto rep = kinetic::weak_form_residual(sol, &m, p, f, 1.0, cat);
        factor = rep.max_residual > 0.0
                     ? rep.max_residual_no_measure / rep.max_residual
                     : 1e300;
    }
    const bool pass = chi_dev <= 1e-8 && min_rate >= 0.8 && factor >= 2.0;
    return {pass, fmt("chi identity %.1e; pre-shock rate min %.3f (bound 0.8); "
                      "measure improvement %.1fx (bound 2x)",
                      chi_dev, min_rate, factor)};
}

Outcome criterion_10() {
    double worst = 0.0;
    for (double lambda : {0.3, 0.5, 0.7}) {
        const int nx = 1 << 16;
        std::vector<double> u(static_cast<std::size_t>(nx), 0.0);
        for (int j = 0; j < nx; ++j) {
            const double x = (j + 0.5) / nx;
            for (int k = 1; k <= 12; ++k)
                u[static_cast<std::size_t>(j)] +=
                    std::pow(2.0, -lambda * k) *
                    std::cos(2.0 * std::numbers::pi * std::pow(2.0, k) * x);
        }
        const auto rep = regularity::besov_exponent(regularity::l1_modulus(u, 16));
        worst = std::max(worst, std::abs(rep.lambda_hat - lambda));
    }
    std::vector<double> step(4096, 0.0);
    for (int j = 0; j < 2048; ++j) step[static_cast<std::size_t>(j)] = 1.0;
    const auto srep = regularity::besov_exponent(regularity::l1_modulus(step, 10));
    const bool pass = worst <= 0.05 && std::abs(srep.lambda_hat - 1.0) <= 0.02;
    return {pass, fmt("lacunary |lambda_hat - lambda| worst %.4f (bound 0.05); "
                      "step lambda_hat %.4f (band 1 +- 0.02)",
                      worst, srep.lambda_hat)};
}

Outcome criterion_11() {
    config::U0Spec u0spec;
    u0spec.preset = "lacunary";
    u0spec.lambda0 = 0.3;
    u0spec.terms = 10;
    u0spec.scale = 0.5;
    const int nx = 1024;
    const auto u0 = experiment::build_u0(u0spec, nx);
    const auto f = solver::burgers();
    config::PathSpec ps;
    ps.kind = "fbm";
    ps.n_steps = 256;
    ps.horizon = 1.0;
    const auto times = experiment::uniform_output_times(ps, 8);
    const double hs[3] = {0.25, 0.5, 0.75};
    double medians[3], preds[3];
    bool lower_ok = true;
    for (int hi = 0; hi < 3; ++hi) {
        ps.hurst = hs[hi];
        std::vector<double> lams;
        for (int i = 0; i < 20; ++i) {
            const auto p = experiment::build_path(
                ps, derive_seed(2026, static_cast<std::size_t>(hi) * 20 +
                                          static_cast<std::size_t>(i)));
            const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, times);
            lams.push_back(
                regularity::besov_exponent(regularity::time_averaged_modulus(sol, 8))
                    .lambda_hat);
        }
        medians[hi] = median(lams);
        preds[hi] = regularity::predicted_lambda_fbm(hs[hi], 1.0);
        lower_ok = lower_ok && medians[hi] >= preds[hi] - 0.1;
    }
    const bool trend_ok =
        (medians[0] >= medians[1] - 1e-12 && medians[1] >= medians[2] - 1e-12) ||
        (std::max({medians[0], medians[1], medians[2]}) -
             std::min({medians[0], medians[1], medians[2]}) <=
         0.05);
    return {lower_ok && trend_ok,
            fmt("median lambda_hat %.3f/%.3f/%.3f for H=0.25/0.5/0.75 vs "
                "floors %.3f/%.3f/%.3f; trend non-increasing",
                medians[0], medians[1], medians[2], preds[0] - 0.1,
                preds[1] - 0.1, preds[2] - 0.1)};
}

Outcome criterion_12() {
    const auto f = solver::burgers();
    // A battery of measure extractions: shock, pre-shock, and a rough path.
    {
        const int nx = 512;
        std::vector<double> u0(nx);
        for (int j = 0; j < nx; ++j)
            u0[static_cast<std::size_t>(j)] = ((j + 0.5) / nx < 0.5) ? 0.5 : -0.5;
        const auto p = paths::generate_linear(32, 1.0);
        const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(8, 1.0));
        ledger.track(solver::entropy_defect(sol, f, p, solver::default_v_levels(u0, 64)));
    }
    {
        const int nx = 512;
        const auto p = paths::generate_linear(48, 0.3);
        const auto u0 = sine_field(nx, 0.2, 0.15);
        const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(48, 0.3));
        ledger.track(solver::entropy_defect(sol, f, p, solver::default_v_levels(u0, 64)));
    }
    {
        const int nx = 512;
        config::U0Spec u0spec;
        u0spec.preset = "lacunary";
        u0spec.lambda0 = 0.3;
        u0spec.terms = 10;
        u0spec.scale = 0.5;
        const auto u0 = experiment::build_u0(u0spec, nx);
        const auto p = paths::generate_fbm(0.5, 1, 128, 1.0, derive_seed(2026, 20));
        const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(8, 1.0));
        ledger.track(solver::entropy_defect(sol, f, p, solver::default_v_levels(u0, 64)));
    }
    return {ledger.worst_ratio >= -1e-8,
            fmt("entropy floor min/max density %.2e over %zu measures "
                "(bound -1e-8)",
                ledger.worst_ratio, ledger.tracked)};
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else if (std::strncmp(argv[i], "--criterion=", 12) == 0)
            only = std::atoi(argv[i] + 12);
        else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 64;
        }
    }
    if (only < 0 || only > 12) {
        std::fprintf(stderr, "acceptance: criterion must lie in 1..12\n");
        return 64;
    }

    Outcome (*criteria[12])() = {
        criterion_1, criterion_2, criterion_3,  criterion_4,
        criterion_5, criterion_6, criterion_7,  criterion_8,
        criterion_9, criterion_10, criterion_11, criterion_12};

    bool all_pass = true;
    for (int i = 1; i <= 12; ++i) {
        if (only != 0 && i != only) continue;
        Outcome out;
        try {
            out = criteria[i - 1]();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s\n", out.pass ? "PASS" : "FAIL", i,
                    out.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
