#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "roughflux/solver.hpp"

namespace roughflux::kinetic {

using paths::SampledPath;

// chi(u, v): +1 for 0 < v < u, -1 for u < v < 0, 0 otherwise; the boundary
// sets v = 0 and v = u map to 0 so that oddness chi(-u,-v) = -chi(u,v) is
// exact.
int chi(double u, double v);

// chi evaluated on a spatial field times a level grid, nx x nv row-major.
struct KineticField {
    std::vector<double> u;
    std::vector<double> v_levels;
    std::vector<std::int8_t> values; // u.size() x v_levels.size()
    std::int8_t at(std::size_t j, std::size_t l) const {
        return values[j * v_levels.size() + l];
    }
};
KineticField chi_field(std::span<const double> u, std::span<const double> v_levels);

// Velocity average u^phi(x) = int chi(u(x), v) phi(v) dv = int_0^u(x) phi dv,
// integrated exactly over the overlap of [0, u(x)] with each level cell (phi
// sampled at the overlap midpoint). v_levels must be uniform and cover
// [min(u,0), max(u,0)].
std::vector<double> velocity_average(std::span<const double> u_field,
                                     const std::function<double(double)>& phi,
                                     std::span<const double> v_levels);

// Smooth compactly supported bump exp(1 - 1/(1-z^2)) for z = (v-c)/w, and its
// v-derivative; identically 0 for |z| >= 1.
double bump(double v, double center, double width);
double bump_deriv(double v, double center, double width);

// Test function psi_{n,b}(x, v) = e^{2 pi i n x} * bump(v; center, width).
struct TestFunction {
    int n = 0;
    double center = 0.0;
    double width = 1.0;
};

// Catalog spanning n in {0, +-1, +-2, +-4} and three bump shapes adapted to
// the level band [v_lo, v_hi].
std::vector<TestFunction> default_catalog(double v_lo, double v_hi);

struct WeakFormReport {
    std::vector<TestFunction> catalog;
    std::vector<double> residuals;            // |chi(t) - chi(0) + measure term|
    std::vector<double> residuals_no_measure; // |chi(t) - chi(0)|
    double max_residual = 0.0;
    double max_residual_no_measure = 0.0;
    double truncation_fraction = 0.0; // time-fraction of a straddling t-cell cut
    double t_eval = 0.0;
};

// Checks the characteristic-transported weak formulation at t_eval: for each
// catalog psi it forms
//   int chi(t,x,v) psi(x - a(v) w_t, v) - int chi(0,x,v) psi(x, v)
//     + int m(r,x,v) d/dv[psi(x - a(v) w_r, v)]
// with Simpson quadrature in v for the chi integrals and midpoint-in-r cell
// pairing for the measure, and reports residual magnitudes (the measure term
// is dropped for the no-measure variant; pass m = nullptr to skip it
// entirely). t_eval must be one of the solution's output times.
WeakFormReport weak_form_residual(const solver::GridSolution& sol,
                                  const solver::KineticMeasure* m,
                                  const SampledPath& p, const solver::Flux& f,
                                  double t_eval,
                                  std::span<const TestFunction> catalog,
                                  int panels = 96);

// WeakFormReport CSV: rows (n, center, width, residual, residual_no_measure)
// plus a trailing max-residual summary row.
void write_weakform_csv(const WeakFormReport& rep, const std::string& file);

} // namespace roughflux::kinetic
