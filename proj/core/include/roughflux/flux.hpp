#pragma once

#include <span>
#include <vector>

namespace roughflux::solver {

// Polynomial flux A(u) = sum_k coeffs[k] u^k with exact derivative a = A'.
struct Flux {
    std::vector<double> coeffs;
    double nu = 1.0;          // degeneracy order the flux is checked against
    double c_estimate = -1.0; // non-degeneracy constant; negative until estimated

    double value(double u) const;       // A(u)
    double speed(double u) const;       // a(u) = A'(u)
    double speed_slope(double u) const; // a'(u) = A''(u)
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_burgers() const;
};

// Build a flux from polynomial coefficients (constant term first); degree >= 1.
Flux make_flux(std::span<const double> coeffs);

// A(u) = u^2/2, the workhorse non-degenerate example (a(v) = v, nu = 1).
Flux burgers();

// Minimum of |a(v2) - a(v1)| / |v2 - v1|^nu over distinct grid pairs in
// [v_lo, v_hi]; the result is also stored on the flux together with nu.
// c_estimate = 0 signals degeneracy at order nu.
double check_nondegeneracy(Flux& f, double nu, double v_lo, double v_hi,
                           int n_grid = 256);

// Sign-aware monotone numerical fluxes for a polynomial A on a working range.
// The split integrals apos(u) = int_0^u max(a,0), aneg(u) = int_0^u min(a,0)
// are evaluated exactly through the antiderivative A and the sign-change
// roots of a, so the Engquist-Osher flux is exact for polynomial fluxes.
class FluxSplit {
  public:
    // The range must contain every state the scheme can visit (and 0, the
    // anchor of the split integrals); it is widened internally as needed.
    FluxSplit(const Flux& f, double u_lo, double u_hi);

    double apos(double u) const;
    double aneg(double u) const;

    // Numerical flux for du/dtau + d/dx [sgn * A(u)] = 0, sgn in {+1, -1}.
    double eo(double ul, double ur, int sgn) const;
    double godunov(double ul, double ur, int sgn) const;

    // sup |a| over the working range (exact: endpoints and critical points).
    double max_speed() const { return max_speed_; }

  private:
    double absint(double u) const; // int_0^u |a(s)| ds (signed by direction)

    Flux f_;
    std::vector<double> roots_;   // sign-change roots of a in the range
    std::vector<double> root_a_;  // A at those roots
    double max_speed_ = 0.0;
};

} // namespace roughflux::solver
