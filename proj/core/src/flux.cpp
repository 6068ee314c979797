#include "roughflux/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace roughflux::solver {

namespace {

double horner(std::span<const double> c, double u) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * u + c[k];
    return acc;
}

std::vector<double> derivative(std::span<const double> c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k)
        d.push_back(static_cast<double>(k) * c[k]);
    if (d.empty()) d.push_back(0.0);
    return d;
}

// Sign-change roots of a polynomial on [lo, hi]: scan on a uniform grid and
// bisect each bracketing interval. Adequate for the low-degree fluxes here.
std::vector<double> sign_change_roots(std::span<const double> poly, double lo,
                                      double hi) {
    constexpr int n_scan = 1024;
    std::vector<double> roots;
    const double h = (hi - lo) / n_scan;
    double xl = lo, fl = horner(poly, lo);
    for (int i = 1; i <= n_scan; ++i) {
        const double xr = lo + i * h;
        const double fr = horner(poly, xr);
        if (fl == 0.0) roots.push_back(xl);
        if (fl * fr < 0.0) {
            double a = xl, b = xr, fa = fl;
            for (int it = 0; it < 100; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = horner(poly, m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (fa * fm < 0.0)
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xl = xr;
        fl = fr;
    }
    if (fl == 0.0) roots.push_back(xl);
    std::sort(roots.begin(), roots.end());
    const double tol = 1e-12 * std::max(1.0, hi - lo);
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [tol](double a, double b) { return b - a < tol; }),
                roots.end());
    return roots;
}

} // namespace

double Flux::value(double u) const { return horner(coeffs, u); }

double Flux::speed(double u) const { return horner(derivative(coeffs), u); }

double Flux::speed_slope(double u) const {
    return horner(derivative(derivative(coeffs)), u);
}

bool Flux::is_burgers() const {
    if (coeffs.size() < 3 || coeffs[2] != 0.5) return false;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (k != 2 && coeffs[k] != 0.0) return false;
    return true;
}

Flux make_flux(std::span<const double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("make_flux: empty coefficient list");
    if (coeffs.size() < 2)
        throw std::invalid_argument("make_flux: flux degree must be >= 1");
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw std::invalid_argument("make_flux: coefficients must be finite");
    Flux f;
    f.coeffs.assign(coeffs.begin(), coeffs.end());
    return f;
}

Flux burgers() {
    const double c[] = {0.0, 0.0, 0.5};
    return make_flux(c);
}

double check_nondegeneracy(Flux& f, double nu, double v_lo, double v_hi, int n_grid) {
    if (!(nu >= 1.0)) throw std::invalid_argument("check_nondegeneracy: nu must be >= 1");
    if (!(v_hi > v_lo))
        throw std::invalid_argument("check_nondegeneracy: need v_lo < v_hi");
    if (n_grid < 64)
        throw std::invalid_argument("check_nondegeneracy: n_grid must be >= 64");

    std::vector<double> a(static_cast<std::size_t>(n_grid));
    std::vector<double> v(static_cast<std::size_t>(n_grid));
    for (int i = 0; i < n_grid; ++i) {
        v[static_cast<std::size_t>(i)] =
            v_lo + (v_hi - v_lo) * static_cast<double>(i) / (n_grid - 1);
        a[static_cast<std::size_t>(i)] = f.speed(v[static_cast<std::size_t>(i)]);
    }
    double c_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_grid; ++i)
        for (int j = i + 1; j < n_grid; ++j) {
            const double gap = std::abs(v[static_cast<std::size_t>(j)] -
                                        v[static_cast<std::size_t>(i)]);
            const double den = nu == 1.0 ? gap : std::pow(gap, nu);
            c_min = std::min(c_min, std::abs(a[static_cast<std::size_t>(j)] -
                                             a[static_cast<std::size_t>(i)]) /
                                        den);
        }
    f.nu = nu;
    f.c_estimate = c_min;
    return c_min;
}

FluxSplit::FluxSplit(const Flux& f, double u_lo, double u_hi) : f_(f) {
    if (!(u_hi >= u_lo)) throw std::invalid_argument("FluxSplit: bad range");
    // The split integrals are anchored at 0 and the scheme may clip states
    // against Kruzhkov levels slightly outside the data range.
    const double pad = 1e-9 + 1e-9 * (u_hi - u_lo);
    const double lo = std::min(u_lo, 0.0) - pad;
    const double hi = std::max(u_hi, 0.0) + pad;

    const std::vector<double> a = derivative(f_.coeffs);
    roots_ = sign_change_roots(a, lo, hi);
    for (double r : roots_) root_a_.push_back(f_.value(r));

    max_speed_ = std::max(std::abs(f_.speed(lo)), std::abs(f_.speed(hi)));
    for (double r : sign_change_roots(derivative(a), lo, hi))
        max_speed_ = std::max(max_speed_, std::abs(f_.speed(r)));
}

double FluxSplit::absint(double u) const {
    // int_0^u |a| partitioned by the sign-change roots of a; each piece has
    // one-signed a, so its |.|-integral is |A(b) - A(a)|. Orientation: the
    // result is negative for u < 0 (integral taken from 0 to u).
    const double lo = std::min(0.0, u), hi = std::max(0.0, u);
    double acc = 0.0;
    double prev_x = lo, prev_a = f_.value(lo);
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (roots_[i] <= lo) continue;
        if (roots_[i] >= hi) break;
        acc += std::abs(root_a_[i] - prev_a);
        prev_x = roots_[i];
        prev_a = root_a_[i];
    }
    (void)prev_x;
    acc += std::abs(f_.value(hi) - prev_a);
    return u >= 0.0 ? acc : -acc;
}

double FluxSplit::apos(double u) const {
    return 0.5 * (f_.value(u) - f_.value(0.0) + absint(u));
}

double FluxSplit::aneg(double u) const {
    return 0.5 * (f_.value(u) - f_.value(0.0) - absint(u));
}

double FluxSplit::eo(double ul, double ur, int sgn) const {
    return sgn > 0 ? apos(ul) + aneg(ur) : -(aneg(ul) + apos(ur));
}

double FluxSplit::godunov(double ul, double ur, int sgn) const {
    // For B(u) = sgn*A(u): min of B over [ul, ur] if ul <= ur, else max over
    // [ur, ul]; extrema of B sit at interval endpoints or at roots of a.
    const double lo = std::min(ul, ur), hi = std::max(ul, ur);
    double bmin = std::min(f_.value(ul), f_.value(ur));
    double bmax = std::max(f_.value(ul), f_.value(ur));
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (roots_[i] <= lo || roots_[i] >= hi) continue;
        bmin = std::min(bmin, root_a_[i]);
        bmax = std::max(bmax, root_a_[i]);
    }
    if (sgn > 0) return ul <= ur ? bmin : bmax;
    // B = -A: min B = -max A, max B = -min A.
    return ul <= ur ? -bmax : -bmin;
}

} // namespace roughflux::solver
