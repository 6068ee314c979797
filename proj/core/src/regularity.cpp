#include "roughflux/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roughflux/fit.hpp"
#include "roughflux/io.hpp"

namespace roughflux::regularity {

namespace {

double shifted_l1(std::span<const double> u, std::size_t shift) {
    const std::size_t n = u.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t k = j + shift;
        if (k >= n) k -= n;
        acc += std::abs(u[k] - u[j]);
    }
    return acc / static_cast<double>(n);
}

void validate_levels(std::size_t nx, int n_levels) {
    if (n_levels < 4)
        throw std::invalid_argument("l1_modulus: n_levels must be >= 4");
    if ((std::size_t{1} << n_levels) > nx)
        throw std::invalid_argument("l1_modulus: 2^n_levels must not exceed nx");
}

} // namespace

ModulusCurve l1_modulus(std::span<const double> field, int n_levels) {
    if (field.size() < 2)
        throw std::invalid_argument("l1_modulus: field shorter than 2 cells");
    validate_levels(field.size(), n_levels);
    ModulusCurve curve;
    curve.nx = static_cast<int>(field.size());
    const double dx = 1.0 / curve.nx;
    for (int l = 0; l < n_levels; ++l) {
        const std::size_t shift = std::size_t{1} << l;
        curve.h.push_back(static_cast<double>(shift) * dx);
        curve.omega.push_back(shifted_l1(field, shift));
    }
    for (double u : field) curve.field_l1 += std::abs(u);
    curve.field_l1 *= dx;
    return curve;
}

ModulusCurve l1_modulus_dense(std::span<const double> field) {
    if (field.size() < 2)
        throw std::invalid_argument("l1_modulus_dense: field shorter than 2 cells");
    ModulusCurve curve;
    curve.nx = static_cast<int>(field.size());
    const double dx = 1.0 / curve.nx;
    const std::size_t m = field.size() / 2;
    for (std::size_t s = 1; s <= m; ++s) {
        curve.h.push_back(static_cast<double>(s) * dx);
        curve.omega.push_back(shifted_l1(field, s));
    }
    for (double u : field) curve.field_l1 += std::abs(u);
    curve.field_l1 *= dx;
    return curve;
}

RegularityReport besov_exponent(const ModulusCurve& curve, double fit_lo,
                                double fit_hi) {
    if (curve.h.empty() || curve.h.size() != curve.omega.size())
        throw std::invalid_argument("besov_exponent: malformed curve");
    if (!(fit_hi > fit_lo)) throw std::invalid_argument("besov_exponent: empty fit range");

    RegularityReport rep;
    rep.curve = curve;
    std::vector<double> lx, ly;
    std::size_t lo_idx = curve.h.size(), hi_idx = 0;
    std::size_t in_range = 0;
    for (std::size_t i = 0; i < curve.h.size(); ++i) {
        if (curve.h[i] < fit_lo || curve.h[i] > fit_hi) continue;
        ++in_range;
        lo_idx = std::min(lo_idx, i);
        hi_idx = std::max(hi_idx, i);
        if (curve.omega[i] > 0.0) {
            lx.push_back(std::log(curve.h[i]));
            ly.push_back(std::log(curve.omega[i]));
        }
    }
    if (in_range < 4)
        throw std::invalid_argument("besov_exponent: need >= 4 lags in the fit range");
    rep.fit_lo_idx = lo_idx;
    rep.fit_hi_idx = hi_idx;
    if (lx.size() < 2) {
        // Vanishing modulus: the field is constant at the resolved lags.
        rep.lambda_hat = 1.0;
        rep.smooth_field = true;
        rep.fit_quality = 1.0;
        return rep;
    }
    const LinFit fit = linear_fit(lx, ly);
    rep.lambda_hat = std::clamp(fit.slope, 0.0, 1.0);
    rep.fit_quality = fit.r2;
    return rep;
}

RegularityReport besov_exponent(const ModulusCurve& curve) {
    if (curve.nx <= 0) throw std::invalid_argument("besov_exponent: malformed curve");
    return besov_exponent(curve, 4.0 / curve.nx, 1.0 / 16.0);
}

double gagliardo_seminorm(std::span<const double> field, double lambda) {
    if (!(lambda > 0.05 && lambda < 0.95))
        throw std::invalid_argument("gagliardo_seminorm: lambda must lie in (0.05, 0.95)");
    const std::size_t n = field.size();
    if (n < 4) throw std::invalid_argument("gagliardo_seminorm: field too short");
    const double dx = 1.0 / static_cast<double>(n);
    const std::size_t m = n / 2;
    // A cell-average field is piecewise constant, so its modulus omega(h) is
    // exactly piecewise linear in h with knots at the integer cell lags and
    // omega(0) = 0. Integrating each linear piece against h^{-1-lambda} in
    // closed form gives the exact seminorm of the discrete field over
    // 0 < |h| <= 1/2 (the h < 0 half doubles the h > 0 half); the linear
    // ramp out of the origin keeps the integral finite for every lambda < 1.
    std::vector<double> w(m + 1, 0.0);
    for (std::size_t s = 1; s <= m; ++s) w[s] = shifted_l1(field, s);
    auto prim = [](double q, double h) { return std::pow(h, q) / q; };
    double acc = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        const double lo = static_cast<double>(s) * dx;
        const double hi = static_cast<double>(s + 1) * dx;
        const double b = (w[s + 1] - w[s]) / dx;
        acc += b * (prim(1.0 - lambda, hi) - prim(1.0 - lambda, lo));
        if (s > 0) {
            const double a = w[s] - b * lo;
            acc += a * (prim(-lambda, hi) - prim(-lambda, lo));
        }
    }
    // Odd grids stop half a cell short of 1/2; extend the last value.
    const double h_top = static_cast<double>(m) * dx;
    if (h_top < 0.5)
        acc += w[m] * (prim(-lambda, 0.5) - prim(-lambda, h_top));
    return 2.0 * acc;
}

double gagliardo_from_curve(const ModulusCurve& curve, double lambda) {
    if (!(lambda > 0.05 && lambda < 0.95))
        throw std::invalid_argument("gagliardo_from_curve: lambda must lie in (0.05, 0.95)");
    if (curve.h.size() < 2)
        throw std::invalid_argument("gagliardo_from_curve: need >= 2 lags");
    // Quadrature of int_0^{1/2} omega(h) h^{-1-lambda} dh from the sampled
    // curve: power-law interpolation between lags, a linear ramp from the
    // origin below the first lag, and the last power law extended out to 1/2
    // when the curve stops short. Doubled for the h < 0 half.
    auto prim = [](double q, double h) { return std::pow(h, q) / q; };
    auto power_piece = [&](double anchor, double w_anchor, double p, double lo,
                           double hi) {
        // int_lo^hi w_anchor * (h/anchor)^p * h^{-1-lambda} dh. The
        // antiderivative w_anchor * anchor^{-lambda} * (x/anchor)^{p-lambda}
        // / (p-lambda) is evaluated in log space: near-vanishing omega makes
        // p huge, and the naive anchor^{-p} form dies by overflow long before
        // the bounded endpoint values do.
        const double q = p - lambda;
        const double base = std::log(w_anchor) - lambda * std::log(anchor);
        if (std::abs(q) < 1e-12)
            return std::exp(base) * std::log(hi / lo);
        auto F = [&](double x) {
            return std::exp(base + q * std::log(x / anchor));
        };
        return (F(hi) - F(lo)) / q;
    };
    auto linear_piece = [&](double h0, double w0, double h1, double w1,
                            double lo, double hi) {
        const double b = (w1 - w0) / (h1 - h0);
        const double a = w0 - b * h0;
        double t = b * (prim(1.0 - lambda, hi) - prim(1.0 - lambda, lo));
        if (a != 0.0) t += a * (prim(-lambda, hi) - prim(-lambda, lo));
        return t;
    };
    double acc = curve.omega[0] * std::pow(curve.h[0], -lambda) / (1.0 - lambda);
    double p_tail = 1.0;
    for (std::size_t i = 0; i + 1 < curve.h.size(); ++i) {
        if (curve.h[i] >= 0.5) break;
        const double h1 = std::min(curve.h[i + 1], 0.5);
        if (curve.omega[i] > 0.0 && curve.omega[i + 1] > 0.0) {
            const double p = std::log(curve.omega[i + 1] / curve.omega[i]) /
                             std::log(curve.h[i + 1] / curve.h[i]);
            acc += power_piece(curve.h[i], curve.omega[i], p, curve.h[i], h1);
            p_tail = p;
        } else {
            // A vanishing endpoint breaks the log-log form; fall back to
            // linear interpolation for this piece.
            acc += linear_piece(curve.h[i], std::max(curve.omega[i], 0.0),
                                curve.h[i + 1], std::max(curve.omega[i + 1], 0.0),
                                curve.h[i], h1);
        }
    }
    const double h_last = curve.h.back();
    if (h_last < 0.5 && curve.omega.back() > 0.0) {
        // Extrapolation only; a near-vanishing endpoint can fit an absurd
        // power, so keep it in a physically meaningful band.
        const double p_ext = std::clamp(p_tail, -8.0, 8.0);
        acc += power_piece(h_last, curve.omega.back(), p_ext, h_last, 0.5);
    }
    return 2.0 * acc;
}

double predicted_lambda_main(double rho, double gamma, double eta, double nu) {
    if (!(rho > 0.0)) throw std::invalid_argument("predicted_lambda_main: rho must be > 0");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("predicted_lambda_main: gamma must lie in (0, 1]");
    if (!(eta > 0.0)) throw std::invalid_argument("predicted_lambda_main: eta must be > 0");
    if (!(nu >= 1.0)) throw std::invalid_argument("predicted_lambda_main: nu must be >= 1");
    const double q = std::max(nu * rho, 1.0);
    const double one_mg = 1.0 - gamma;
    const double branch1 = (rho * (eta + 1.0) - one_mg) / (q * (eta + 1.0) + one_mg);
    const double branch2 = (rho + 2.0 * q) / (q * (2.0 * eta + 1.0) + one_mg);
    return std::min(branch1, branch2);
}

double predicted_lambda_fbm(double H, double nu) {
    if (!(H > 0.0 && H < 1.0))
        throw std::invalid_argument("predicted_lambda_fbm: H must lie in (0, 1)");
    if (!(nu >= 1.0)) throw std::invalid_argument("predicted_lambda_fbm: nu must be >= 1");
    return 1.0 / (std::max(nu, 2.0 * H) * (H + 1.0) + H);
}

double predicted_s_star(double eta, double iota) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("predicted_s_star: eta must lie in (0, 1]");
    if (!(iota >= 0.5 && iota <= 1.0))
        throw std::invalid_argument("predicted_s_star: iota must lie in [1/2, 1]");
    return (1.0 + eta - iota) / (1.0 + eta + iota);
}

InterplayResult interplay_pairs(double H1, double nu1, double H2) {
    if (!(H1 > 0.0 && H1 < 1.0) || !(H2 > 0.0 && H2 < 1.0))
        throw std::invalid_argument("interplay_pairs: H must lie in (0, 1)");
    if (!(nu1 >= 1.0)) throw std::invalid_argument("interplay_pairs: nu1 must be >= 1");
    InterplayResult res;
    res.nu2 = (nu1 * (H1 + 1.0) + H1 - H2) / (H2 + 1.0);
    res.feasible = res.nu2 >= 1.0;
    return res;
}

ModulusCurve time_averaged_modulus(const solver::GridSolution& sol, int n_levels,
                                   bool include_initial) {
    if (sol.times.empty()) throw std::invalid_argument("time_averaged_modulus: no slices");
    validate_levels(static_cast<std::size_t>(sol.nx), n_levels);
    ModulusCurve avg;
    avg.nx = sol.nx;
    const double dx = sol.dx();
    for (int l = 0; l < n_levels; ++l)
        avg.h.push_back(static_cast<double>(std::size_t{1} << l) * dx);
    avg.omega.assign(avg.h.size(), 0.0);
    std::size_t used = 0;
    for (std::size_t ti = 0; ti < sol.times.size(); ++ti) {
        if (!include_initial && sol.times[ti] <= 1e-12) continue;
        const ModulusCurve one = l1_modulus(sol.at(ti), n_levels);
        for (std::size_t i = 0; i < avg.omega.size(); ++i) avg.omega[i] += one.omega[i];
        avg.field_l1 += one.field_l1;
        ++used;
    }
    if (used == 0)
        throw std::invalid_argument("time_averaged_modulus: no slices after t = 0");
    for (double& w : avg.omega) w /= static_cast<double>(used);
    avg.field_l1 /= static_cast<double>(used);
    return avg;
}

void write_modulus_csv(const ModulusCurve& curve, const std::string& file) {
    CsvWriter csv(file, {"h", "omega"});
    for (std::size_t i = 0; i < curve.h.size(); ++i)
        csv.row({g17(curve.h[i]), g17(curve.omega[i])});
    csv.close();
}

} // namespace roughflux::regularity
