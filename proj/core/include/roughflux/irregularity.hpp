#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "roughflux/path.hpp"

namespace roughflux::irregularity {

using paths::SampledPath;

// |Phi_{s,t}(a)| over a frequency grid and a set of dyadic time windows.
// Magnitudes are raw (not divided by any window-span power) so that norm
// rechecks at other (rho, gamma) exponents reuse the same scan.
struct OscillatoryScan {
    std::vector<double> a_grid;                      // frequency magnitudes
    std::vector<double> direction;                   // unit vector in R^d
    std::vector<std::pair<double, double>> windows;  // (s, t) pairs
    std::vector<std::vector<double>> magnitudes;     // [a][window] = |Phi_{s,t}(a)|
};

struct IrregularityReport {
    double rho_hat = 0.0;
    double gamma_used = 0.0;
    double norm_estimate = 0.0;  // finite-grid lower estimate of the (rho,gamma) norm
    double fit_quality = 0.0;
    bool degenerate = false;     // constant path: no decay in a
    OscillatoryScan scan;
};

struct InterpolationCheck {
    double kappa = 0.0;
    double lhs_norm = 0.0;   // finite-grid norm at (rho*kappa, 1 - kappa*(1-gamma))
    double rhs_bound = 0.0;  // 2^{1-kappa} * norm_estimate^kappa
    double margin = 0.0;     // rhs - lhs
    bool pass = false;
};

struct IotaAlphaFit {
    double alpha = 0.0;
    double slope = 0.0;       // d log I / d log lambda
    double iota = 0.0;        // (-1 - slope) / alpha
    double fit_quality = 0.0;
};

struct IotaEstimate {
    double iota_hat = 0.0;                       // median over alpha, clamped to [0, 1.5]
    std::vector<IotaAlphaFit> per_alpha;
    std::vector<double> lambda_grid;
    std::vector<std::vector<double>> integrals;  // [alpha][lambda] = I(lambda; alpha)
    double constant_c = 0.0;                     // max over cells of I * lambda^{1 + iota*alpha}
    double skipped_fraction = 0.0;               // exact-zero increments dropped
    bool flagged = false;                        // skipped_fraction > 0.5%
};

struct AveragingCheck {
    std::vector<double> n_values;
    std::vector<double> lhs;     // double integral at each n
    std::vector<double> ratios;  // lhs * |n|^rho / (||f1||_2 ||f2||_2)
    double l2_f1 = 0.0;
    double l2_f2 = 0.0;
};

// Trapezoidal quadrature of int_s^t exp(i<a, w_r> - 2 b r) dr on the path's
// native grid; s and t are snapped to the nearest grid points. phi is the
// b = 0 special case (same code path). Quadrature error is of order
// O(dt * |a| * local path variation) per unit time.
std::complex<double> psi(const SampledPath& p, std::span<const double> a, double b,
                         double s, double t);
std::complex<double> phi(const SampledPath& p, std::span<const double> a, double s,
                         double t);

// K^w(a,b) = sup_s |Psi^{w^s}_{0,T-s}(a,b)|, evaluated over all grid values
// of s via one backward recurrence (the shift identity makes the shifted
// integral an exponentially reweighted tail sum).
double k_sup(const SampledPath& p, std::span<const double> a, double b);

// D(a) = sup over dyadic windows of |Phi_{s,t}(a)| / (t-s)^gamma on a
// geometric a-grid; rho_hat = -slope of log D vs log(1+a) over the upper
// half of the grid; norm_estimate = max over the grid of (1+a)^rho_hat D(a).
// Windows shorter than max(T/64, 8 cells) are excluded: near the coherence
// scale 1/a^2 the supremum saturates and would bias the decay fit.
// For d > 1 the scan runs along the fixed direction (1,..,1)/sqrt(d).
IrregularityReport estimate_rho_gamma(const SampledPath& p, double a_max = 256.0,
                                      int n_a = 16, double gamma = 0.55,
                                      double a_min = 2.0);

// Recomputes the finite-grid norm at (rho_hat*kappa, 1-kappa*(1-gamma)) from
// the stored scan and checks it against 2^{1-kappa} * norm_estimate^kappa.
InterpolationCheck check_interpolation(const IrregularityReport& report, double kappa,
                                       double tolerance = 1e-8);

// I(lambda; alpha) = int_0^T dr int_0^{T-r} dt e^{-lambda t} |w^r_t|^alpha
// by outer rectangle (subsampled to at most max_outer nodes) and inner
// quadrature that is exact for the piecewise-linear |w|^alpha on the first
// (singular) cell and trapezoidal on the remaining nodes; per-alpha slope of
// log I vs log lambda gives iota = (-1 - slope)/alpha, aggregated by median.
IotaEstimate estimate_iota(const SampledPath& p,
                           std::span<const double> alphas = {},
                           double lambda_min = 16.0, double lambda_max = 512.0,
                           int n_lambda = 13, std::size_t max_outer = 1024);

// LHS(n) = integral of f1(v1) f2(v2) / (1 + |n (a(v1)-a(v2))|^rho) over K x K
// for samples on a uniform grid over [v_lo, v_hi]; reports the normalized
// ratios LHS(n) |n|^rho / (||f1||_2 ||f2||_2), which the averaging bound
// requires to stay bounded in n. Requires rho * nu < 1.
AveragingCheck check_averaging_bound(std::span<const double> f1,
                                     std::span<const double> f2,
                                     std::span<const double> a_of_v, double v_lo,
                                     double v_hi, double rho, double nu,
                                     std::span<const double> n_values);

} // namespace roughflux::irregularity
