#pragma once

// Shared fixtures and independent oracles for the test suite. Everything here
// is computed from first principles (closed forms, direct constructions) so
// the tests do not lean on the code under test for their expected values.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace test_common {

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Exact fBm covariance E[w_s w_t] = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
inline double fbm_cov_exact(double hurst, double s, double t) {
    return 0.5 * (std::pow(s, 2.0 * hurst) + std::pow(t, 2.0 * hurst) -
                  std::pow(std::abs(t - s), 2.0 * hurst));
}

// Cell-average sine datum offset + amp * sin(2 pi x) at cell centers.
inline std::vector<double> sine_field(int nx, double offset, double amp) {
    std::vector<double> u(static_cast<std::size_t>(nx));
    for (int j = 0; j < nx; ++j)
        u[static_cast<std::size_t>(j)] =
            offset + amp * std::sin(2.0 * std::numbers::pi * (j + 0.5) / nx);
    return u;
}

// Indicator of [0, 1/2) on the unit torus.
inline std::vector<double> step_field(int nx) {
    std::vector<double> u(static_cast<std::size_t>(nx), 0.0);
    for (int j = 0; j < nx / 2; ++j) u[static_cast<std::size_t>(j)] = 1.0;
    return u;
}

// The indicator of a half torus has modulus omega(h) = 2h on [0, 1/2], so its
// Gagliardo seminorm 2 * int_0^{1/2} omega(h) h^{-1-lambda} dh has the closed
// form below.
inline double step_gagliardo_exact(double lambda) {
    return 4.0 * std::pow(0.5, 1.0 - lambda) / (1.0 - lambda);
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += std::abs(a[j] - b[j]);
    return acc / static_cast<double>(a.size());
}

inline double max_abs_diff(std::span<const double> a,
                           std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        acc = std::max(acc, std::abs(a[j] - b[j]));
    return acc;
}

// Piecewise-linear tent path 0 -> peak -> 0 over [0, T] on an N-step grid,
// returned as the raw value array for generate_custom.
inline std::vector<double> tent_values(std::size_t n_steps, double peak) {
    std::vector<double> vals(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n_steps);
        vals[k] = peak * (1.0 - std::abs(2.0 * s - 1.0));
    }
    return vals;
}

// Fresh scratch directory under the system temp root; removed lazily by the
// OS, so tests need not clean up after a failure.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    const auto base = std::filesystem::temp_directory_path() /
                      ("roughflux_test_" + tag + "_" + std::to_string(rng()));
    std::filesystem::create_directories(base);
    return base;
}

inline std::string slurp(const std::filesystem::path& file) {
    std::string out;
    if (auto* f = std::fopen(file.string().c_str(), "rb")) {
        char buf[4096];
        std::size_t got = 0;
        while ((got = std::fread(buf, 1, sizeof buf, f)) > 0)
            out.append(buf, got);
        std::fclose(f);
    }
    return out;
}

} // namespace test_common
