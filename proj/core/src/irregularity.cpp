#include "roughflux/irregularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roughflux/errors.hpp"
#include "roughflux/fit.hpp"

namespace roughflux::irregularity {

namespace {

constexpr double default_alphas[] = {-0.3, -0.5, -0.7};

void validate_frequency(const SampledPath& p, std::span<const double> a) {
    if (a.size() != static_cast<std::size_t>(p.dim))
        throw std::invalid_argument("irregularity: frequency vector must have dim entries");
}

// Snap a time in [0,T] to its nearest grid index.
std::size_t snap_index(const SampledPath& p, double t, const char* what) {
    if (t < 0.0 || t > p.horizon * (1.0 + 1e-12))
        throw std::invalid_argument(std::string("irregularity: ") + what +
                                    " outside [0, T]");
    const double idx = t / p.dt();
    const long long k = std::llround(idx);
    return static_cast<std::size_t>(std::clamp<long long>(
        k, 0, static_cast<long long>(p.n_steps)));
}

// <a, w_{t_k}> for the path's k-th grid point.
double dot_point(const SampledPath& p, std::span<const double> a, std::size_t k) {
    double s = 0.0;
    const std::size_t d = static_cast<std::size_t>(p.dim);
    for (std::size_t c = 0; c < d; ++c) s += a[c] * p.values[k * d + c];
    return s;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::complex<double> psi(const SampledPath& p, std::span<const double> a, double b,
                         double s, double t) {
    validate_frequency(p, a);
    if (!(s < t))
        throw std::invalid_argument("irregularity: need s < t");
    const std::size_t is = snap_index(p, s, "s");
    const std::size_t it = snap_index(p, t, "t");
    if (is >= it)
        throw std::invalid_argument("irregularity: window collapses after grid snap");

    const double dt = p.dt();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = is; k <= it; ++k) {
        const double weight = (k == is || k == it) ? 0.5 : 1.0;
        const double phase = dot_point(p, a, k);
        const double damp = -2.0 * b * p.time(k);
        acc += weight * std::exp(damp) *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc * dt;
}

std::complex<double> phi(const SampledPath& p, std::span<const double> a, double s,
                         double t) {
    return psi(p, a, 0.0, s, t);
}

double k_sup(const SampledPath& p, std::span<const double> a, double b) {
    validate_frequency(p, a);
    if (b < 0.0) throw std::invalid_argument("k_sup: b must be >= 0");
    const std::size_t n = p.n_steps;
    const double dt = p.dt();
    const double decay = std::exp(-2.0 * b * dt);

    // Psi^{w^s}_{0,T-s}(a,b) = e^{-i<a,w_s>} * dt-trapezoid of
    // e^{i<a,w_r>} e^{-2b(r-s)} over r in [s,T]; the phase prefactor drops
    // under |.|, and the reweighted tail sums satisfy a one-step recurrence.
    std::vector<std::complex<double>> f(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double phase = dot_point(p, a, k);
        f[k] = {std::cos(phase), std::sin(phase)};
    }

    double best = 0.0;
    std::complex<double> tail = f[n]; // sum_{l>=j} f_l e^{-2b(t_l - t_j)}
    double end_weight = 1.0;          // e^{-2b(T - t_j)}
    for (std::size_t j = n; j-- > 0;) {
        tail = f[j] + decay * tail;
        end_weight *= decay;
        const std::complex<double> integral =
            dt * (tail - 0.5 * (f[j] + f[n] * end_weight));
        best = std::max(best, std::abs(integral));
    }
    return best;
}

IrregularityReport estimate_rho_gamma(const SampledPath& p, double a_max, int n_a,
                                      double gamma, double a_min) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("estimate_rho_gamma: gamma must lie in (0,1]");
    if (n_a < 8) throw std::invalid_argument("estimate_rho_gamma: n_a must be >= 8");
    if (!(a_max >= 4.0)) throw std::invalid_argument("estimate_rho_gamma: a_max must be >= 4");
    if (!(a_min > 0.0 && a_min < a_max))
        throw std::invalid_argument("estimate_rho_gamma: need 0 < a_min < a_max");
    const std::size_t n = p.n_steps;
    if (n < 16) throw std::invalid_argument("estimate_rho_gamma: path too short");

    IrregularityReport rep;
    rep.gamma_used = gamma;

    const std::size_t d = static_cast<std::size_t>(p.dim);
    rep.scan.direction.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));

    // Projection of the path onto the scan direction.
    std::vector<double> proj(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c)
            s += rep.scan.direction[c] * p.values[k * d + c];
        proj[k] = s;
    }

    double max_move = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        max_move = std::max(max_move, p.increment_norm(0, k));
    rep.degenerate = max_move == 0.0;

    rep.scan.a_grid.resize(static_cast<std::size_t>(n_a));
    const double log_ratio = std::log(a_max / a_min);
    for (int i = 0; i < n_a; ++i)
        rep.scan.a_grid[static_cast<std::size_t>(i)] =
            a_min * std::exp(log_ratio * static_cast<double>(i) /
                             static_cast<double>(n_a - 1));

    // Dyadic windows, level j holding 2^j windows; levels are restricted to
    // spans >= max(T/64, 8 cells).
    const int j_max = std::min(6, static_cast<int>(std::floor(
                                      std::log2(static_cast<double>(n) / 8.0))));
    std::vector<std::pair<std::size_t, std::size_t>> window_idx;
    for (int j = 0; j <= j_max; ++j) {
        const std::size_t count = std::size_t{1} << j;
        for (std::size_t r = 0; r < count; ++r) {
            const auto lo = static_cast<std::size_t>(std::llround(
                static_cast<double>(r) * static_cast<double>(n) / static_cast<double>(count)));
            const auto hi = static_cast<std::size_t>(std::llround(
                static_cast<double>(r + 1) * static_cast<double>(n) / static_cast<double>(count)));
            window_idx.emplace_back(lo, hi);
            rep.scan.windows.emplace_back(p.time(lo), p.time(hi));
        }
    }

    const double dt = p.dt();
    rep.scan.magnitudes.assign(rep.scan.a_grid.size(),
                               std::vector<double>(window_idx.size(), 0.0));
    std::vector<double> decay(rep.scan.a_grid.size(), 0.0); // D(a)
    std::vector<std::complex<double>> prefix(n + 1);
    for (std::size_t ia = 0; ia < rep.scan.a_grid.size(); ++ia) {
        const double a = rep.scan.a_grid[ia];
        prefix[0] = {0.0, 0.0};
        std::complex<double> prev{std::cos(a * proj[0]), std::sin(a * proj[0])};
        for (std::size_t k = 1; k <= n; ++k) {
            const std::complex<double> cur{std::cos(a * proj[k]), std::sin(a * proj[k])};
            prefix[k] = prefix[k - 1] + 0.5 * dt * (prev + cur);
            prev = cur;
        }
        double best = 0.0;
        for (std::size_t w = 0; w < window_idx.size(); ++w) {
            const auto [lo, hi] = window_idx[w];
            const double mag = std::abs(prefix[hi] - prefix[lo]);
            rep.scan.magnitudes[ia][w] = mag;
            const double span = static_cast<double>(hi - lo) * dt;
            best = std::max(best, mag / std::pow(span, gamma));
        }
        decay[ia] = best;
    }

    if (!rep.degenerate) {
        std::vector<double> lx, ly;
        for (std::size_t ia = rep.scan.a_grid.size() / 2; ia < rep.scan.a_grid.size();
             ++ia) {
            if (decay[ia] > 0.0) {
                lx.push_back(std::log1p(rep.scan.a_grid[ia]));
                ly.push_back(std::log(decay[ia]));
            }
        }
        if (lx.size() >= 2) {
            const LinFit fit = linear_fit(lx, ly);
            rep.rho_hat = std::max(-fit.slope, 0.0);
            rep.fit_quality = fit.r2;
        }
    }

    for (std::size_t ia = 0; ia < rep.scan.a_grid.size(); ++ia)
        rep.norm_estimate = std::max(
            rep.norm_estimate,
            std::pow(1.0 + rep.scan.a_grid[ia], rep.rho_hat) * decay[ia]);
    return rep;
}

InterpolationCheck check_interpolation(const IrregularityReport& report, double kappa,
                                       double tolerance) {
    if (!(kappa > 0.0 && kappa <= 1.0))
        throw std::invalid_argument("check_interpolation: kappa must lie in (0,1]");
    if (report.scan.a_grid.empty() || report.scan.windows.empty())
        throw std::invalid_argument("check_interpolation: report carries no scan");

    InterpolationCheck chk;
    chk.kappa = kappa;
    const double gamma_prime = 1.0 - kappa * (1.0 - report.gamma_used);
    const double rho_prime = report.rho_hat * kappa;
    for (std::size_t ia = 0; ia < report.scan.a_grid.size(); ++ia) {
        const double freq_factor = std::pow(1.0 + report.scan.a_grid[ia], rho_prime);
        for (std::size_t w = 0; w < report.scan.windows.size(); ++w) {
            const auto& [s, t] = report.scan.windows[w];
            chk.lhs_norm = std::max(chk.lhs_norm,
                                    freq_factor * report.scan.magnitudes[ia][w] /
                                        std::pow(t - s, gamma_prime));
        }
    }
    chk.rhs_bound = std::pow(2.0, 1.0 - kappa) * std::pow(report.norm_estimate, kappa);
    chk.margin = chk.rhs_bound - chk.lhs_norm;
    chk.pass = chk.lhs_norm <= chk.rhs_bound + tolerance;
    return chk;
}

IotaEstimate estimate_iota(const SampledPath& p, std::span<const double> alphas,
                           double lambda_min, double lambda_max, int n_lambda,
                           std::size_t max_outer) {
    if (alphas.empty()) alphas = default_alphas;
    for (double a : alphas)
        if (!(a > -0.9 && a < -0.1))
            throw std::invalid_argument("estimate_iota: alphas must lie in (-0.9,-0.1)");
    if (!(lambda_min >= 1.0))
        throw std::invalid_argument("estimate_iota: lambda_min must be >= 1");
    if (!(lambda_max / lambda_min >= 16.0))
        throw std::invalid_argument("estimate_iota: need lambda_max/lambda_min >= 16");
    if (n_lambda < 4) throw std::invalid_argument("estimate_iota: n_lambda must be >= 4");
    if (max_outer < 16) throw std::invalid_argument("estimate_iota: max_outer too small");
    const std::size_t n = p.n_steps;
    if (n < 8) throw std::invalid_argument("estimate_iota: path too short");

    const double dt = p.dt();
    const std::size_t stride = std::max<std::size_t>(1, n / max_outer);
    const double outer_weight = static_cast<double>(stride) * dt;
    const std::size_t n_alpha = alphas.size();

    // node_profile[k][j] collects, over all outer nodes r, the trapezoid
    // contribution of the relative node j (time j*dt after r); cell_profile[k]
    // collects the exact integral of |w^r|^alpha over the singular first cell
    // (the t=0 node itself carries a nonintegrable value and is dropped).
    std::vector<std::vector<double>> node_profile(n_alpha,
                                                  std::vector<double>(n + 1, 0.0));
    std::vector<double> cell_profile(n_alpha, 0.0);
    std::size_t zero_hits = 0, opportunities = 0;

    for (std::size_t r = 0; r < n; r += stride) {
        const std::size_t span = n - r;
        for (std::size_t j = 1; j <= span; ++j) {
            const double d = p.increment_norm(r, r + j);
            ++opportunities;
            if (d <= 0.0) {
                ++zero_hits;
                continue;
            }
            const double weight = (j == 1 || j == span) ? 0.5 : 1.0;
            const double ld = std::log(d);
            for (std::size_t k = 0; k < n_alpha; ++k)
                node_profile[k][j] += std::exp(alphas[k] * ld) * weight * outer_weight;
            if (j == 1)
                for (std::size_t k = 0; k < n_alpha; ++k)
                    cell_profile[k] +=
                        std::exp(alphas[k] * ld) / (1.0 + alphas[k]) * outer_weight;
        }
    }

    IotaEstimate est;
    est.skipped_fraction =
        opportunities == 0 ? 1.0
                           : static_cast<double>(zero_hits) / static_cast<double>(opportunities);
    est.flagged = est.skipped_fraction > 0.005;

    est.lambda_grid.resize(static_cast<std::size_t>(n_lambda));
    const double log_ratio = std::log(lambda_max / lambda_min);
    for (int i = 0; i < n_lambda; ++i)
        est.lambda_grid[static_cast<std::size_t>(i)] =
            lambda_min * std::exp(log_ratio * static_cast<double>(i) /
                                  static_cast<double>(n_lambda - 1));

    est.integrals.assign(n_alpha, std::vector<double>(est.lambda_grid.size(), 0.0));
    std::vector<double> node_factor(n + 1);
    for (std::size_t il = 0; il < est.lambda_grid.size(); ++il) {
        const double lambda = est.lambda_grid[il];
        for (std::size_t j = 0; j <= n; ++j)
            node_factor[j] = std::exp(-lambda * static_cast<double>(j) * dt);
        const double cell_factor = (1.0 - std::exp(-lambda * dt)) / (lambda * dt);
        for (std::size_t k = 0; k < n_alpha; ++k) {
            double acc = 0.0;
            for (std::size_t j = 1; j <= n; ++j)
                acc += node_profile[k][j] * node_factor[j];
            est.integrals[k][il] = acc * dt + cell_profile[k] * dt * cell_factor;
        }
    }

    std::vector<double> log_lambda(est.lambda_grid.size());
    for (std::size_t il = 0; il < log_lambda.size(); ++il)
        log_lambda[il] = std::log(est.lambda_grid[il]);
    std::vector<double> iotas;
    for (std::size_t k = 0; k < n_alpha; ++k) {
        std::vector<double> log_i(est.integrals[k].size());
        for (std::size_t il = 0; il < log_i.size(); ++il) {
            if (!(est.integrals[k][il] > 0.0))
                throw NumericalError("estimate_iota: nonpositive occupation integral");
            log_i[il] = std::log(est.integrals[k][il]);
        }
        const LinFit fit = linear_fit(log_lambda, log_i);
        IotaAlphaFit af;
        af.alpha = alphas[k];
        af.slope = fit.slope;
        af.iota = (-1.0 - fit.slope) / alphas[k];
        af.fit_quality = fit.r2;
        est.per_alpha.push_back(af);
        iotas.push_back(af.iota);
    }
    est.iota_hat = std::clamp(median_of(iotas), 0.0, 1.5);

    for (std::size_t k = 0; k < n_alpha; ++k)
        for (std::size_t il = 0; il < est.lambda_grid.size(); ++il)
            est.constant_c = std::max(
                est.constant_c,
                est.integrals[k][il] *
                    std::pow(est.lambda_grid[il], 1.0 + est.iota_hat * alphas[k]));
    return est;
}

AveragingCheck check_averaging_bound(std::span<const double> f1,
                                     std::span<const double> f2,
                                     std::span<const double> a_of_v, double v_lo,
                                     double v_hi, double rho, double nu,
                                     std::span<const double> n_values) {
    const std::size_t m = f1.size();
    if (m < 2 || f2.size() != m || a_of_v.size() != m)
        throw std::invalid_argument("check_averaging_bound: sample arrays must match, size >= 2");
    if (!(v_hi > v_lo))
        throw std::invalid_argument("check_averaging_bound: need v_lo < v_hi");
    if (!(rho > 0.0) || !(nu >= 1.0) || rho * nu >= 1.0)
        throw std::invalid_argument(
            "check_averaging_bound: need rho > 0, nu >= 1 and rho*nu < 1");
    if (n_values.empty())
        throw std::invalid_argument("check_averaging_bound: empty n list");
    for (double f : f1)
        if (!(f >= 0.0)) throw std::invalid_argument("check_averaging_bound: f1 must be >= 0");
    for (double f : f2)
        if (!(f >= 0.0)) throw std::invalid_argument("check_averaging_bound: f2 must be >= 0");

    const double dv = (v_hi - v_lo) / static_cast<double>(m - 1);
    auto weight = [&](std::size_t i) {
        return (i == 0 || i == m - 1) ? 0.5 * dv : dv;
    };

    AveragingCheck chk;
    double q1 = 0.0, q2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        q1 += weight(i) * f1[i] * f1[i];
        q2 += weight(i) * f2[i] * f2[i];
    }
    chk.l2_f1 = std::sqrt(q1);
    chk.l2_f2 = std::sqrt(q2);
    const double denom = chk.l2_f1 * chk.l2_f2;

    for (double nv : n_values) {
        if (!(std::abs(nv) >= 1.0))
            throw std::invalid_argument("check_averaging_bound: |n| must be >= 1");
        double lhs = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (f1[i] == 0.0) continue;
            const double wi = weight(i) * f1[i];
            for (std::size_t j = 0; j < m; ++j) {
                const double gap = std::abs(nv * (a_of_v[i] - a_of_v[j]));
                lhs += wi * weight(j) * f2[j] / (1.0 + std::pow(gap, rho));
            }
        }
        chk.n_values.push_back(nv);
        chk.lhs.push_back(lhs);
        chk.ratios.push_back(denom > 0.0
                                 ? lhs * std::pow(std::abs(nv), rho) / denom
                                 : 0.0);
    }
    return chk;
}

} // namespace roughflux::irregularity
