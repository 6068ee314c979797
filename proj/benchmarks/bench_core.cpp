// Microbenchmarks for the hot paths: path synthesis, the rough solver step,
// the oscillatory scan, and the regularity quadratures.

#include <benchmark/benchmark.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "roughflux/irregularity.hpp"
#include "roughflux/path.hpp"
#include "roughflux/regularity.hpp"
#include "roughflux/rng.hpp"
#include "roughflux/solver.hpp"

using namespace roughflux;

namespace {

std::vector<double> sine_field(int nx, double offset, double amp) {
    std::vector<double> u(static_cast<std::size_t>(nx));
    for (int j = 0; j < nx; ++j)
        u[static_cast<std::size_t>(j)] =
            offset + amp * std::sin(2.0 * std::numbers::pi * (j + 0.5) / nx);
    return u;
}

void BM_FbmSample(benchmark::State& state) {
    const auto n_steps = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto p = paths::generate_fbm(0.35, 1, n_steps, 1.0, seed++);
        benchmark::DoNotOptimize(p.values.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n_steps));
}

void BM_SolverEvolve(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0));
    const auto f = solver::burgers();
    const auto p = paths::generate_fbm(0.5, 1, 64, 1.0, 7);
    const auto u0 = sine_field(nx, 0.1, 0.4);
    const std::vector<double> times = {1.0};
    for (auto _ : state) {
        const auto sol = solver::solve_rough(f, p, u0, nx, 0.5, times);
        benchmark::DoNotOptimize(sol.u.data());
    }
}

void BM_OscillatoryScan(benchmark::State& state) {
    const auto p = paths::generate_fbm(
        0.5, 1, static_cast<std::size_t>(state.range(0)), 1.0, 3);
    for (auto _ : state) {
        const auto rep = irregularity::estimate_rho_gamma(p);
        benchmark::DoNotOptimize(rep.norm_estimate);
    }
}

void BM_IotaProfile(benchmark::State& state) {
    const auto p = paths::generate_fbm(
        0.5, 1, static_cast<std::size_t>(state.range(0)), 1.0, 5);
    const std::array<double, 1> alphas = {-0.5};
    for (auto _ : state) {
        const auto est = irregularity::estimate_iota(p, alphas);
        benchmark::DoNotOptimize(est.iota_hat);
    }
}

void BM_GagliardoSeminorm(benchmark::State& state) {
    const auto u = sine_field(static_cast<int>(state.range(0)), 0.0, 1.0);
    for (auto _ : state) {
        const double val = regularity::gagliardo_seminorm(u, 0.5);
        benchmark::DoNotOptimize(val);
    }
}

} // namespace

BENCHMARK(BM_FbmSample)->Arg(1024)->Arg(8192)->Arg(1 << 16);
BENCHMARK(BM_SolverEvolve)->Arg(256)->Arg(1024);
BENCHMARK(BM_OscillatoryScan)->Arg(4096)->Arg(16384);
BENCHMARK(BM_IotaProfile)->Arg(4096)->Arg(8192);
BENCHMARK(BM_GagliardoSeminorm)->Arg(1024)->Arg(8192);

BENCHMARK_MAIN();
