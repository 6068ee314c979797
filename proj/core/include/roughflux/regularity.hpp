#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "roughflux/solver.hpp"

namespace roughflux::regularity {

// L1 modulus of continuity on dyadic cell shifts: omega(h) = ||u(.+h) - u||_1
// for h = 2^l * dx, l = 0 .. n_levels-1.
struct ModulusCurve {
    std::vector<double> h;
    std::vector<double> omega;
    double field_l1 = 0.0;
    int nx = 0;
};

ModulusCurve l1_modulus(std::span<const double> field, int n_levels);

// Modulus at every cell lag h = s*dx, s = 1 .. nx/2. Resolves intra-octave
// structure the dyadic curve cannot see; carrier for the seminorm cross-check.
ModulusCurve l1_modulus_dense(std::span<const double> field);

struct RegularityReport {
    double lambda_hat = 0.0; // fitted Besov exponent, clamped to [0, 1]
    ModulusCurve curve;
    std::size_t fit_lo_idx = 0, fit_hi_idx = 0; // inclusive index range used
    double fit_quality = 0.0;
    bool smooth_field = false;  // modulus vanished on the fit range
    bool time_averaged = false; // curve is an L1_t average over output times
    std::vector<std::pair<double, double>> gagliardo; // optional (lambda, seminorm)
};

// lambda_hat = clamp(log-log slope of omega(h) over lags in [fit_lo, fit_hi]).
// At least 4 lags with omega > 0 must fall inside the range; a vanishing
// modulus yields lambda_hat = 1 with the smooth-field flag.
RegularityReport besov_exponent(const ModulusCurve& curve, double fit_lo,
                                double fit_hi);
// Default fit window [4*dx, 1/16]: excludes the grid-scale plateau and the
// O(1) saturation.
RegularityReport besov_exponent(const ModulusCurve& curve);

// Gagliardo seminorm int int |u(x+h)-u(x)| / |h|^{1+lambda} dx dh over the
// torus with |h| <= 1/2: the exact value for the piecewise-constant field,
// whose modulus is piecewise linear in h with omega(0) = 0, integrated in
// closed form (finite for every lambda < 1). lambda in (0.05, 0.95).
double gagliardo_seminorm(std::span<const double> field, double lambda);

// The same object integrated from a sampled modulus curve: power-law
// interpolation between lags, a linear ramp below the first lag, the last
// power extended to 1/2. Cross-check route for gagliardo_seminorm; feed it
// l1_modulus_dense output for quantitative agreement.
double gagliardo_from_curve(const ModulusCurve& curve, double lambda);

// Predicted regularity threshold for a (rho,gamma)-irregular driver: the
// minimum of
//   [rho(eta+1) - (1-gamma)] / [(nu*rho v 1)(eta+1) + (1-gamma)]  and
//   [rho + 2(nu*rho v 1)] / [(nu*rho v 1)(2*eta+1) + (1-gamma)].
double predicted_lambda_main(double rho, double gamma, double eta, double nu);

// Fractional-Brownian specialization 1 / ((nu v 2H)(H+1) + H), H in (0,1).
double predicted_lambda_fbm(double H, double nu);

// Scaling-condition threshold s* = (1 + eta - iota) / (1 + eta + iota),
// eta in (0,1], iota in [1/2, 1].
double predicted_s_star(double eta, double iota);

// Solves nu2*(H2+1) + H2 = nu1*(H1+1) + H1 for nu2; infeasible if nu2 < 1.
struct InterplayResult {
    double nu2 = 0.0;
    bool feasible = false;
};
InterplayResult interplay_pairs(double H1, double nu1, double H2);

// L1_t-averaged modulus over a solution's output slices (the t = 0 slice is
// skipped unless include_initial).
ModulusCurve time_averaged_modulus(const solver::GridSolution& sol, int n_levels,
                                   bool include_initial = false);

// CSV: rows (h, omega).
void write_modulus_csv(const ModulusCurve& curve, const std::string& file);

} // namespace roughflux::regularity
