#include <doctest/doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "roughflux/errors.hpp"
#include "roughflux/path.hpp"
#include "roughflux/rng.hpp"
#include "roughflux/solver.hpp"
#include "test_common.hpp"

using namespace roughflux;

namespace {

std::vector<double> uniform_times(std::size_t count, double horizon) {
    std::vector<double> t;
    for (std::size_t k = 1; k <= count; ++k)
        t.push_back(horizon * static_cast<double>(k) / static_cast<double>(count));
    return t;
}

} // namespace

TEST_CASE("constants ride along any path unchanged") {
    const auto f = solver::burgers();
    const auto p = paths::generate_fbm(0.4, 1, 128, 1.0, 11);
    const std::vector<double> u0(256, 0.37);
    const auto sol = solver::solve_rough(f, p, u0, 256, 0.5, uniform_times(4, 1.0));
    for (std::size_t ti = 0; ti < sol.times.size(); ++ti)
        for (double v : sol.at(ti)) CHECK(std::abs(v - 0.37) <= 1e-12);
}

TEST_CASE("mass is conserved across every rough segment") {
    const auto f = solver::burgers();
    const auto p = paths::generate_fbm(0.3, 1, 200, 1.0, 13);
    const int nx = 256;
    const auto u0 = test_common::sine_field(nx, 0.1, 0.4);
    const double mass0 = std::accumulate(u0.begin(), u0.end(), 0.0);
    const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(8, 1.0));
    for (std::size_t ti = 0; ti < sol.times.size(); ++ti) {
        const auto u = sol.at(ti);
        const double mass = std::accumulate(u.begin(), u.end(), 0.0);
        CHECK(std::abs(mass - mass0) <= 1e-12 * nx);
    }
}

TEST_CASE("the maximum principle holds to rounding") {
    const auto f = solver::burgers();
    const auto p = paths::generate_brownian(1, 150, 1.0, 17);
    const int nx = 200;
    const auto u0 = test_common::sine_field(nx, -0.05, 0.45);
    const auto [lo_it, hi_it] = std::minmax_element(u0.begin(), u0.end());
    const double lo = *lo_it, hi = *hi_it;
    const auto sol = solver::solve_rough(f, p, u0, nx, 0.9, uniform_times(5, 1.0));
    for (std::size_t ti = 0; ti < sol.times.size(); ++ti)
        for (double v : sol.at(ti)) {
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
}

TEST_CASE("total variation never increases between outputs") {
    const auto f = solver::make_flux(std::vector<double>{0.0, 0.3, 0.5, -0.2});
    const auto p = paths::generate_fbm(0.6, 1, 100, 1.0, 23);
    const int nx = 128;
    const auto u0 = test_common::sine_field(nx, 0.0, 0.5);
    const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(10, 1.0));
    double prev = solver::total_variation(u0);
    for (std::size_t ti = 0; ti < sol.times.size(); ++ti) {
        const double tv = solver::total_variation(sol.at(ti));
        CHECK(tv <= prev + 1e-12);
        prev = tv;
    }
}

TEST_CASE("discrete L1 contraction holds for random data pairs") {
    const auto f = solver::burgers();
    const auto p = paths::generate_fbm(0.4, 1, 128, 1.0, 99);
    const auto times = uniform_times(4, 1.0);
    NormalSampler rng(derive_seed(5, 0));
    const int nx = 128;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> a(nx), b(nx);
        for (int j = 0; j < nx; ++j) {
            a[static_cast<std::size_t>(j)] = 0.5 * rng();
            b[static_cast<std::size_t>(j)] = 0.5 * rng();
        }
        const auto sa = solver::solve_rough(f, p, a, nx, 0.5, times);
        const auto sb = solver::solve_rough(f, p, b, nx, 0.5, times);
        const double d0 = test_common::l1_distance(a, b);
        for (std::size_t ti = 0; ti < times.size(); ++ti)
            CHECK(test_common::l1_distance(sa.at(ti), sb.at(ti)) <= d0 + 1e-10);
    }
}

TEST_CASE("riemann shock tracks the exact position under a linear clock") {
    const auto f = solver::burgers();
    const int nx = 1024;
    std::vector<double> u0(nx);
    for (int j = 0; j < nx; ++j)
        u0[static_cast<std::size_t>(j)] = ((j + 0.5) / nx < 0.25) ? 1.0 : 0.0;
    const auto p = paths::generate_linear(64, 0.5);
    const auto sol =
        solver::solve_rough(f, p, u0, nx, 0.5, std::vector<double>{0.5});
    const auto uf = sol.at(0);
    // Shock speed (ul + ur) / 2 = 1/2 moves the jump from 0.25 to 0.5.
    double pos = -1.0;
    for (int j = 0; j + 1 < nx; ++j) {
        const double xj = (j + 0.5) / nx;
        if (xj > 0.3 && uf[static_cast<std::size_t>(j)] >= 0.5 &&
            uf[static_cast<std::size_t>(j + 1)] < 0.5) {
            pos = xj + (uf[static_cast<std::size_t>(j)] - 0.5) /
                           (uf[static_cast<std::size_t>(j)] -
                            uf[static_cast<std::size_t>(j + 1)]) /
                           nx;
            break;
        }
    }
    CHECK(std::abs(pos - 0.5) <= 2.0 / nx);
}

TEST_CASE("a tent path brings smooth data back to its start") {
    const auto f = solver::burgers();
    double prev_err = 0.0;
    for (int nx : {256, 512, 1024}) {
        const auto p =
            paths::generate_custom(test_common::tent_values(64, 0.3), 1, 1.0);
        const auto u0 = test_common::sine_field(nx, 0.0, 0.1);
        const auto sol =
            solver::solve_rough(f, p, u0, nx, 0.5, std::vector<double>{1.0});
        const double err = test_common::l1_distance(sol.at(0), u0);
        if (prev_err > 0.0) CHECK(std::log2(prev_err / err) >= 0.8);
        prev_err = err;
    }
}

TEST_CASE("negating the path is the same as negating the flux") {
    const auto f = solver::burgers();
    const auto fneg = solver::make_flux(std::vector<double>{0.0, 0.0, -0.5});
    const auto p = paths::generate_fbm(0.5, 1, 64, 1.0, 42);
    auto neg = p.values;
    for (double& v : neg) v = -v;
    const auto pneg = paths::generate_custom(neg, 1, 1.0);
    const int nx = 256;
    const auto u0 = test_common::sine_field(nx, 0.1, 0.3);
    const auto times = uniform_times(2, 1.0);
    const auto s1 = solver::solve_rough(f, pneg, u0, nx, 0.5, times);
    const auto s2 = solver::solve_rough(fneg, p, u0, nx, 0.5, times);
    CHECK(test_common::max_abs_diff(s1.u, s2.u) < 1e-8);
}

TEST_CASE("godunov and engquist osher coincide away from sonic points") {
    const auto f = solver::burgers();
    const auto p = paths::generate_fbm(0.5, 1, 64, 1.0, 7);
    const int nx = 128;
    const auto u0 = test_common::sine_field(nx, 0.5, 0.3); // u > 0 everywhere
    const auto times = uniform_times(4, 1.0);
    const auto eo = solver::solve_rough(f, p, u0, nx, 0.5, times, false);
    const auto go = solver::solve_rough(f, p, u0, nx, 0.5, times, true);
    CHECK(test_common::max_abs_diff(eo.u, go.u) < 1e-12);
}

TEST_CASE("output times must land on the path grid") {
    const auto f = solver::burgers();
    const auto p = paths::generate_linear(10, 1.0);
    const std::vector<double> u0(16, 0.0);
    CHECK_THROWS_AS(solver::solve_rough(f, p, u0, 16, 0.5,
                                        std::vector<double>{0.05}),
                    std::invalid_argument);
    CHECK_THROWS_AS(solver::solve_rough(f, p, u0, 16, 0.5,
                                        std::vector<double>{1.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(solver::solve_rough(f, p, u0, 16, 0.5,
                                        std::vector<double>{0.3, 0.2}),
                    std::invalid_argument);
}

TEST_CASE("non finite initial data is rejected before stepping") {
    const auto f = solver::burgers();
    const auto p = paths::generate_linear(4, 0.1);
    std::vector<double> u0(32, 0.1);
    u0[3] = std::nan("");
    CHECK_THROWS_AS(solver::solve_rough(f, p, u0, 32, 0.5,
                                        std::vector<double>{0.1}),
                    std::invalid_argument);
}

TEST_CASE("binary solution io round trips the field data") {
    const auto f = solver::burgers();
    const auto p = paths::generate_fbm(0.5, 1, 32, 1.0, 3);
    const int nx = 64;
    const auto u0 = test_common::sine_field(nx, 0.0, 0.2);
    const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, uniform_times(4, 1.0));
    const auto dir = test_common::scratch_dir("binio");
    const auto file = (dir / "sol.bin").string();
    solver::write_solution_binary(sol, file);
    const auto back = solver::read_solution_binary(file);
    CHECK(back.nx == sol.nx);
    CHECK(back.n_times == static_cast<std::int64_t>(sol.times.size()));
    CHECK(back.u == sol.u);
    std::filesystem::remove_all(dir);
}

TEST_CASE("flux splitting reproduces engquist osher on monotone data") {
    // For quadratic flux and nonnegative states the EO flux is f(ul) exactly.
    const auto f = solver::burgers();
    solver::FluxSplit split(f, 0.0, 1.0);
    for (double ul : {0.1, 0.4, 0.9})
        for (double ur : {0.2, 0.6, 1.0}) {
            CHECK(split.eo(ul, ur, +1) == doctest::Approx(f.value(ul)).epsilon(1e-14));
            CHECK(split.godunov(ul, ur, +1) ==
                  doctest::Approx(f.value(ul)).epsilon(1e-14));
        }
    CHECK(split.max_speed() == doctest::Approx(1.0).epsilon(1e-6));
}
