#include "roughflux/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "roughflux/io.hpp"
#include "roughflux/parallel.hpp"

namespace roughflux::kinetic {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Path value at a grid time (t must sit on the path grid).
double path_value_at(const SampledPath& p, double t) {
    const double dt = p.dt();
    const long long idx = std::llround(t / dt);
    if (std::abs(static_cast<double>(idx) * dt - t) > 1e-9 * std::max(1.0, p.horizon))
        throw std::invalid_argument("weak_form_residual: time off the path grid");
    return p.value(static_cast<std::size_t>(std::clamp<long long>(
                       idx, 0, static_cast<long long>(p.n_steps))),
                   0);
}

// int_0^u bump(v) e^{-2 pi i n a(v) w} dv by composite Simpson.
std::complex<double> chi_integral(double u, const TestFunction& psi,
                                  const solver::Flux& f, double w, int panels) {
    if (u == 0.0) return {0.0, 0.0};
    const int n_nodes = 2 * panels + 1;
    const double h = u / (2 * panels);
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < n_nodes; ++k) {
        const double v = h * k;
        const double b = bump(v, psi.center, psi.width);
        if (b == 0.0) continue;
        const double weight = (k == 0 || k == n_nodes - 1) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        const double theta = two_pi * psi.n * f.speed(v) * w;
        acc += weight * b * std::complex<double>(std::cos(theta), -std::sin(theta));
    }
    return acc * (h / 3.0);
}

} // namespace

int chi(double u, double v) {
    if (v > 0.0 && v < u) return 1;
    if (v < 0.0 && v > u) return -1;
    return 0;
}

KineticField chi_field(std::span<const double> u, std::span<const double> v_levels) {
    KineticField field;
    field.u.assign(u.begin(), u.end());
    field.v_levels.assign(v_levels.begin(), v_levels.end());
    field.values.resize(u.size() * v_levels.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t l = 0; l < v_levels.size(); ++l)
            field.values[j * v_levels.size() + l] =
                static_cast<std::int8_t>(chi(u[j], v_levels[l]));
    return field;
}

std::vector<double> velocity_average(std::span<const double> u_field,
                                     const std::function<double(double)>& phi,
                                     std::span<const double> v_levels) {
    if (u_field.empty()) throw std::invalid_argument("velocity_average: empty field");
    if (v_levels.size() < 2)
        throw std::invalid_argument("velocity_average: need at least 2 v-levels");
    const double dv = v_levels[1] - v_levels[0];
    if (!(dv > 0.0))
        throw std::invalid_argument("velocity_average: v_levels must increase");
    for (std::size_t l = 1; l < v_levels.size(); ++l)
        if (std::abs(v_levels[l] - v_levels[l - 1] - dv) > 1e-9 * dv)
            throw std::invalid_argument("velocity_average: v_levels must be uniform");
    const double edge_lo = v_levels.front() - 0.5 * dv;
    const double edge_hi = v_levels.back() + 0.5 * dv;
    const auto [min_it, max_it] = std::minmax_element(u_field.begin(), u_field.end());
    if (std::min(*min_it, 0.0) < edge_lo - 1e-12 ||
        std::max(*max_it, 0.0) > edge_hi + 1e-12)
        throw std::invalid_argument(
            "velocity_average: v_levels do not cover the field range");

    std::vector<double> out(u_field.size(), 0.0);
    const auto nv = static_cast<long long>(v_levels.size());
    for (std::size_t j = 0; j < u_field.size(); ++j) {
        const double u = u_field[j];
        if (u == 0.0) continue;
        const double a = std::min(0.0, u), b = std::max(0.0, u);
        auto l_lo = static_cast<long long>(std::floor((a - edge_lo) / dv));
        auto l_hi = static_cast<long long>(std::floor((b - edge_lo) / dv));
        l_lo = std::clamp<long long>(l_lo, 0, nv - 1);
        l_hi = std::clamp<long long>(l_hi, 0, nv - 1);
        double acc = 0.0;
        for (long long l = l_lo; l <= l_hi; ++l) {
            const double cell_lo = edge_lo + static_cast<double>(l) * dv;
            const double lo = std::max(a, cell_lo);
            const double hi = std::min(b, cell_lo + dv);
            if (hi > lo) acc += phi(0.5 * (lo + hi)) * (hi - lo);
        }
        out[j] = u > 0.0 ? acc : -acc;
    }
    return out;
}

double bump(double v, double center, double width) {
    const double z = (v - center) / width;
    if (std::abs(z) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

double bump_deriv(double v, double center, double width) {
    const double z = (v - center) / width;
    if (std::abs(z) >= 1.0) return 0.0;
    const double one_mz2 = 1.0 - z * z;
    return std::exp(1.0 - 1.0 / one_mz2) * (-2.0 * z / (one_mz2 * one_mz2)) / width;
}

std::vector<TestFunction> default_catalog(double v_lo, double v_hi) {
    if (!(v_hi > v_lo)) throw std::invalid_argument("default_catalog: need v_lo < v_hi");
    const double c = 0.5 * (v_lo + v_hi);
    const double h = 0.5 * (v_hi - v_lo);
    const TestFunction shapes[] = {
        {0, c, 0.82 * h}, {0, c + 0.45 * h, 0.36 * h}, {0, c - 0.45 * h, 0.36 * h}};
    std::vector<TestFunction> catalog;
    for (int n : {0, 1, -1, 2, -2, 4, -4})
        for (const TestFunction& s : shapes)
            catalog.push_back({n, s.center, s.width});
    return catalog;
}

WeakFormReport weak_form_residual(const solver::GridSolution& sol,
                                  const solver::KineticMeasure* m,
                                  const SampledPath& p, const solver::Flux& f,
                                  double t_eval,
                                  std::span<const TestFunction> catalog,
                                  int panels) {
    if (p.dim != 1)
        throw std::invalid_argument("weak_form_residual: path must be one-dimensional");
    if (catalog.empty())
        throw std::invalid_argument("weak_form_residual: empty test catalog");
    if (panels < 8) throw std::invalid_argument("weak_form_residual: panels too small");
    const double tol = 1e-9 * std::max(1.0, p.horizon);
    std::size_t ti_eval = sol.times.size();
    for (std::size_t ti = 0; ti < sol.times.size(); ++ti)
        if (std::abs(sol.times[ti] - t_eval) <= tol) {
            ti_eval = ti;
            break;
        }
    if (ti_eval == sol.times.size())
        throw std::invalid_argument("weak_form_residual: t_eval is not an output time");
    if (m != nullptr) {
        if (m->nx != sol.nx)
            throw std::invalid_argument("weak_form_residual: measure grid mismatch");
        if (m->t_edges.back() + tol < t_eval)
            throw std::invalid_argument(
                "weak_form_residual: measure does not extend to t_eval");
        const auto [lo_it, hi_it] = std::minmax_element(sol.u0.begin(), sol.u0.end());
        if (m->v_levels.front() - 0.5 * m->dv > *lo_it + 1e-12 ||
            m->v_levels.back() + 0.5 * m->dv < *hi_it - 1e-12)
            throw std::invalid_argument(
                "weak_form_residual: measure v-levels do not cover the data range");
    }

    WeakFormReport rep;
    rep.catalog.assign(catalog.begin(), catalog.end());
    rep.residuals.resize(catalog.size());
    rep.residuals_no_measure.resize(catalog.size());
    rep.t_eval = sol.times[ti_eval];

    const double w_t = path_value_at(p, sol.times[ti_eval]);
    const double dx = sol.dx();
    const auto u_t = sol.at(ti_eval);

    // Time cells of the measure clipped at t_eval (cells straddling t_eval
    // enter with their elapsed fraction; the cut fraction is reported).
    struct IntervalUse {
        std::size_t ti;
        double frac;
        double w_mid;
    };
    std::vector<IntervalUse> uses;
    if (m != nullptr) {
        for (std::size_t ti = 0; ti < m->n_intervals(); ++ti) {
            const double lo = m->t_edges[ti], hi = m->t_edges[ti + 1];
            if (lo >= t_eval - tol) break;
            const double cut = std::min(hi, t_eval);
            const double frac = (cut - lo) / (hi - lo);
            if (frac < 1.0 - 1e-12)
                rep.truncation_fraction = std::max(rep.truncation_fraction, 1.0 - frac);
            // Midpoint of the included part, snapped to the path grid.
            const double t_mid = 0.5 * (lo + cut);
            const double dt = p.dt();
            const auto idx = static_cast<std::size_t>(std::clamp<long long>(
                std::llround(t_mid / dt), 0, static_cast<long long>(p.n_steps)));
            uses.push_back({ti, frac, p.value(idx, 0)});
        }
    }

    parallel_for(catalog.size(), [&](std::size_t ci) {
        {
            const TestFunction& psi = catalog[ci];
            std::vector<std::complex<double>> phase_x(static_cast<std::size_t>(sol.nx));
            for (int j = 0; j < sol.nx; ++j) {
                const double theta = two_pi * psi.n * (static_cast<double>(j) + 0.5) * dx;
                phase_x[static_cast<std::size_t>(j)] = {std::cos(theta),
                                                        std::sin(theta)};
            }
            std::complex<double> lhs{0.0, 0.0}, init{0.0, 0.0};
            for (int j = 0; j < sol.nx; ++j) {
                const auto js = static_cast<std::size_t>(j);
                lhs += phase_x[js] * chi_integral(u_t[js], psi, f, w_t, panels);
                init += phase_x[js] * chi_integral(sol.u0[js], psi, f, 0.0, panels);
            }
            lhs *= dx;
            init *= dx;

            std::complex<double> mterm{0.0, 0.0};
            for (const IntervalUse& use : uses) {
                const std::size_t nv = m->n_levels();
                // d/dv [e^{2 pi i n (x - a(v) w)} bump(v)] =
                //   e^{2 pi i n (x - a(v) w)} (bump' - 2 pi i n w a'(v) bump).
                std::vector<std::complex<double>> fac(nv);
                for (std::size_t l = 0; l < nv; ++l) {
                    const double v = m->v_levels[l];
                    const double b = bump(v, psi.center, psi.width);
                    const double bd = bump_deriv(v, psi.center, psi.width);
                    const std::complex<double> dv_part(
                        bd, -two_pi * psi.n * use.w_mid * f.speed_slope(v) * b);
                    const double theta = -two_pi * psi.n * f.speed(v) * use.w_mid;
                    fac[l] = dv_part *
                             std::complex<double>(std::cos(theta), std::sin(theta));
                }
                for (int j = 0; j < sol.nx; ++j) {
                    const auto js = static_cast<std::size_t>(j);
                    std::complex<double> row{0.0, 0.0};
                    bool any = false;
                    for (std::size_t l = 0; l < nv; ++l) {
                        const double d = m->at(use.ti, js, l);
                        if (d == 0.0) continue;
                        row += d * fac[l];
                        any = true;
                    }
                    if (any) mterm += phase_x[js] * row * (m->dv * use.frac);
                }
            }
            rep.residuals_no_measure[ci] = std::abs(lhs - init);
            rep.residuals[ci] =
                m != nullptr ? std::abs(lhs - init + mterm) : std::abs(lhs - init);
        }
    });

    rep.max_residual = *std::max_element(rep.residuals.begin(), rep.residuals.end());
    rep.max_residual_no_measure = *std::max_element(
        rep.residuals_no_measure.begin(), rep.residuals_no_measure.end());
    return rep;
}

void write_weakform_csv(const WeakFormReport& rep, const std::string& file) {
    CsvWriter csv(file, {"n", "bump_id", "center", "width", "residual",
                             "residual_no_measure"});
    for (std::size_t ci = 0; ci < rep.catalog.size(); ++ci) {
        const TestFunction& psi = rep.catalog[ci];
        csv.row({std::to_string(psi.n), std::to_string(ci), g17(psi.center),
                 g17(psi.width), g17(rep.residuals[ci]),
                 g17(rep.residuals_no_measure[ci])});
    }
    csv.row({"max", "", "", "", g17(rep.max_residual),
             g17(rep.max_residual_no_measure)});
    csv.close();
}

} // namespace roughflux::kinetic
