#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace roughflux::paths {

enum class PathKind { fbm, brownian, linear, custom, sum };

const char* kind_name(PathKind kind);

// A d-dimensional driving path sampled on the uniform grid t_k = k*T/N,
// k = 0..N. Values are stored row-major ((N+1) x dim) with values[0..dim-1]
// all zero: every downstream quantity (increments, |w^s_t|, oscillatory
// integrals up to a unimodular phase) depends on increments only, so paths
// are normalized to start at the origin.
struct SampledPath {
    PathKind kind = PathKind::custom;
    int dim = 1;
    std::size_t n_steps = 0;       // N
    double horizon = 0.0;          // T
    std::vector<double> values;    // (N+1) * dim, row-major
    std::uint64_t seed = 0;        // meaningful for fbm / brownian
    bool has_seed = false;
    double hurst = 0.0;            // meaningful for fbm
    bool has_hurst = false;

    double dt() const { return horizon / static_cast<double>(n_steps); }
    double time(std::size_t k) const { return static_cast<double>(k) * dt(); }
    double value(std::size_t k, int component = 0) const {
        return values[k * static_cast<std::size_t>(dim) + static_cast<std::size_t>(component)];
    }
    std::span<const double> point(std::size_t k) const {
        return {values.data() + k * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
    // Euclidean norm of w_{t_j} - w_{t_i}.
    double increment_norm(std::size_t i, std::size_t j) const;
    // Short human-readable identifier, e.g. "fbm(H=0.5,d=1,N=1024,T=1,seed=7)".
    std::string describe() const;
};

struct HoelderEstimate {
    double eta_hat = 0.0;                          // clamped to [0, 1]
    std::vector<std::pair<double, double>> modulus; // (h, sup-increment)
    double fit_quality = 0.0;                      // R^2 of the log-log fit
    bool degenerate = false;                       // constant path
};

// Exact-in-law fractional Brownian motion via circulant embedding of the
// increment covariance; components independent; deterministic in seed.
SampledPath generate_fbm(double hurst, int dim, std::size_t n_steps, double horizon,
                         std::uint64_t seed);

// Standard Brownian motion by direct sqrt(dt) increments (cheaper than, and
// distributionally equal to, generate_fbm at H = 1/2; different draws).
SampledPath generate_brownian(int dim, std::size_t n_steps, double horizon,
                              std::uint64_t seed);

// Deterministic kinds: the linear clock w_t = t (per component), and caller
// supplied samples. Custom values must have (N+1)*dim entries and start at 0.
SampledPath generate_linear(std::size_t n_steps, double horizon, int dim = 1);
SampledPath generate_custom(std::vector<double> values, int dim, double horizon);

// Pointwise sum on identical (dim, N, T) grids; kind = sum.
SampledPath sum_paths(const SampledPath& p, const SampledPath& q);

// Sup-increment modulus M(h) = max_k |w_{t_k+h} - w_{t_k}| over dyadic lags
// h = 2^l * dt, l = 0..h_dyadic_levels-1, and the clamped log-log slope.
// Constant paths return eta_hat = 1 with the degenerate flag set.
HoelderEstimate holder_exponent(const SampledPath& p, int h_dyadic_levels = 10);

// Columnar text serialization: header "# kind H d N T seed" then one line
// per grid point (time and dim values, 17 significant digits).
void write_path(std::ostream& os, const SampledPath& p);
SampledPath read_path(std::istream& is);

} // namespace roughflux::paths
