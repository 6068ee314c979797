#pragma once

#include <span>

namespace roughflux {

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0; // coefficient of determination; 1 for a 2-point fit
};

// Ordinary least squares y ~ slope*x + intercept. Requires >= 2 points.
LinFit linear_fit(std::span<const double> x, std::span<const double> y);

} // namespace roughflux
