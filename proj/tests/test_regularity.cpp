#include <doctest/doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "roughflux/path.hpp"
#include "roughflux/regularity.hpp"
#include "roughflux/rng.hpp"
#include "roughflux/solver.hpp"
#include "test_common.hpp"

using namespace roughflux;

namespace {

// Lacunary field sum_k 2^{-lambda k} cos(2 pi 2^k x) at cell centers.
std::vector<double> lacunary_field(int nx, double lambda, int terms) {
    std::vector<double> u(static_cast<std::size_t>(nx), 0.0);
    for (int j = 0; j < nx; ++j) {
        const double x = (j + 0.5) / nx;
        for (int k = 1; k <= terms; ++k)
            u[static_cast<std::size_t>(j)] +=
                std::pow(2.0, -lambda * k) *
                std::cos(2.0 * std::numbers::pi * std::pow(2.0, k) * x);
    }
    return u;
}

} // namespace

TEST_CASE("the sine modulus matches its closed form at every lag") {
    // For u = sin(2 pi x): int |u(x+h) - u(x)| dx = (4/pi) sin(pi h).
    const int nx = 4096;
    const auto u = test_common::sine_field(nx, 0.0, 1.0);
    const auto curve = regularity::l1_modulus_dense(u);
    for (std::size_t i = 0; i < curve.h.size(); ++i) {
        const double exact = (4.0 / std::numbers::pi) *
                             std::sin(std::numbers::pi * curve.h[i]);
        CHECK(curve.omega[i] == doctest::Approx(exact).epsilon(5e-3));
    }
}

TEST_CASE("a smooth field reports an exponent pinned at one") {
    const auto u = test_common::sine_field(4096, 0.0, 1.0);
    const auto rep = regularity::besov_exponent(regularity::l1_modulus(u, 10));
    CHECK(rep.lambda_hat == doctest::Approx(1.0).epsilon(0.02));
    CHECK_FALSE(rep.smooth_field);
}

TEST_CASE("the step field exponent is one") {
    const auto u = test_common::step_field(4096);
    const auto rep = regularity::besov_exponent(regularity::l1_modulus(u, 10));
    CHECK(rep.lambda_hat >= 0.98);
    CHECK(rep.lambda_hat <= 1.0);
}

TEST_CASE("a constant field is flagged as smooth") {
    const std::vector<double> u(1024, 0.42);
    const auto rep = regularity::besov_exponent(regularity::l1_modulus(u, 8));
    CHECK(rep.smooth_field);
    CHECK(rep.lambda_hat == doctest::Approx(1.0));
}

TEST_CASE("lacunary fields recover their construction exponent") {
    for (double lambda : {0.3, 0.5, 0.7}) {
        const auto u = lacunary_field(1 << 16, lambda, 12);
        const auto rep = regularity::besov_exponent(regularity::l1_modulus(u, 16));
        CHECK(std::abs(rep.lambda_hat - lambda) <= 0.05);
    }
}

TEST_CASE("gagliardo seminorm hits the step closed form on all three routes") {
    const auto u = test_common::step_field(1024);
    for (double lambda : {0.3, 0.5, 0.9}) {
        const double exact = test_common::step_gagliardo_exact(lambda);
        const double direct = regularity::gagliardo_seminorm(u, lambda);
        const double via_dense =
            regularity::gagliardo_from_curve(regularity::l1_modulus_dense(u), lambda);
        const double via_dyadic =
            regularity::gagliardo_from_curve(regularity::l1_modulus(u, 10), lambda);
        CHECK(direct == doctest::Approx(exact).epsilon(1e-9));
        CHECK(via_dense == doctest::Approx(exact).epsilon(1e-9));
        CHECK(via_dyadic == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("gagliardo seminorm increases with the order lambda") {
    const auto u = lacunary_field(1 << 12, 0.5, 10);
    double prev = 0.0;
    for (double lambda : {0.2, 0.4, 0.6, 0.8}) {
        const double val = regularity::gagliardo_seminorm(u, lambda);
        CHECK(val > prev);
        prev = val;
    }
}

TEST_CASE("gagliardo orders outside the open band are rejected") {
    const auto u = test_common::step_field(64);
    CHECK_THROWS_AS(regularity::gagliardo_seminorm(u, 0.04), std::invalid_argument);
    CHECK_THROWS_AS(regularity::gagliardo_seminorm(u, 0.96), std::invalid_argument);
    CHECK_THROWS_AS(regularity::gagliardo_from_curve(
                        regularity::l1_modulus_dense(u), 1.2),
                    std::invalid_argument);
}

TEST_CASE("curve and direct quadrature agree on an evolved field") {
    const auto f = solver::burgers();
    const auto p = paths::generate_fbm(0.5, 1, 128, 1.0, derive_seed(60, 0));
    const int nx = 512;
    const auto u0 = lacunary_field(nx, 0.3, 8);
    std::vector<double> scaled = u0;
    double peak = 0.0;
    for (double v : scaled) peak = std::max(peak, std::abs(v));
    for (double& v : scaled) v *= 0.5 / peak;
    const auto sol =
        solver::solve_rough(f, p, scaled, nx, 0.5, std::vector<double>{1.0});
    const auto last = sol.at(0);
    const auto curve = regularity::l1_modulus_dense(last);
    for (double lambda : {0.3, 0.5, 0.7}) {
        const double direct = regularity::gagliardo_seminorm(last, lambda);
        const double via_curve = regularity::gagliardo_from_curve(curve, lambda);
        CHECK(via_curve == doctest::Approx(direct).epsilon(0.02));
    }
}

TEST_CASE("predicted exponents follow the closed formulas") {
    CHECK(regularity::predicted_lambda_fbm(0.5, 1.0) == 0.5);
    for (double hurst : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5})
        CHECK(regularity::predicted_lambda_fbm(hurst, 1.0) ==
              doctest::Approx(1.0 / (1.0 + 2.0 * hurst)).epsilon(1e-15));
    CHECK(regularity::predicted_s_star(0.5, 0.5) == 0.5);
}

TEST_CASE("interplay pairs solve the matching equation") {
    const auto res = regularity::interplay_pairs(0.5, 1.0, 0.25);
    CHECK(res.nu2 == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(res.feasible);
    // Raising the target Hurst index lowers the admissible degree below one.
    const auto hard = regularity::interplay_pairs(0.25, 1.0, 0.75);
    CHECK(hard.nu2 == doctest::Approx((1.25 + 0.25 - 0.75) / 1.75).epsilon(1e-12));
    CHECK_FALSE(hard.feasible);
    CHECK_THROWS_AS(regularity::interplay_pairs(1.5, 1.0, 0.5),
                    std::invalid_argument);
}

TEST_CASE("time averaging over identical slices reproduces one slice") {
    const int nx = 64;
    const auto u = test_common::sine_field(nx, 0.0, 0.3);
    solver::GridSolution sol;
    sol.nx = nx;
    sol.times = {0.5, 1.0};
    sol.u.insert(sol.u.end(), u.begin(), u.end());
    sol.u.insert(sol.u.end(), u.begin(), u.end());
    sol.u0 = u;
    const auto avg = regularity::time_averaged_modulus(sol, 5, false);
    const auto one = regularity::l1_modulus(u, 5);
    CHECK(avg.h == one.h);
    for (std::size_t i = 0; i < avg.omega.size(); ++i)
        CHECK(avg.omega[i] == doctest::Approx(one.omega[i]).epsilon(1e-15));
    CHECK(avg.field_l1 == doctest::Approx(one.field_l1).epsilon(1e-15));
}

TEST_CASE("dense modulus needs at least a handful of cells") {
    const std::vector<double> tiny = {1.0};
    CHECK_THROWS_AS(regularity::l1_modulus_dense(tiny), std::invalid_argument);
}
