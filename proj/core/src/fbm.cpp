#include "roughflux/fbm.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "roughflux/rng.hpp"

namespace roughflux::paths {

namespace {

// FFTW's planner (create/destroy) is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

constexpr std::size_t direct_size_limit = 4096;

} // namespace

FbmSampler::FbmSampler(double hurst, std::size_t n_steps, double horizon,
                       bool force_direct)
    : hurst_(hurst), horizon_(horizon), n_(n_steps) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("FbmSampler: hurst must lie in (0,1)");
    if (n_steps < 2)
        throw std::invalid_argument("FbmSampler: n_steps must be >= 2");
    if (!(horizon > 0.0))
        throw std::invalid_argument("FbmSampler: horizon must be > 0");

    direct_ = force_direct;
    if (!direct_) build_spectrum();
    if (direct_) build_cholesky();
}

FbmSampler::~FbmSampler() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    if (fft_in_) fftw_free(fft_in_);
    if (fft_out_) fftw_free(fft_out_);
}

// Autocovariance of fGn increments at lag k for step dt:
// gamma(k) = dt^{2H}/2 * (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
void FbmSampler::build_spectrum() {
    const std::size_t m = 2 * n_;
    const double dt = horizon_ / static_cast<double>(n_);
    const double scale = 0.5 * std::pow(dt, 2.0 * hurst_);
    const double two_h = 2.0 * hurst_;
    std::vector<double> gamma(n_ + 1);
    for (std::size_t k = 0; k <= n_; ++k) {
        const double kd = static_cast<double>(k);
        gamma[k] = scale * (std::pow(kd + 1.0, two_h) - 2.0 * std::pow(kd, two_h) +
                            std::pow(std::abs(kd - 1.0), two_h));
    }

    // First row of the circulant embedding: gamma(0..N), gamma(N-1..1).
    fftw_complex* in;
    fftw_complex* out;
    fftw_plan forward;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        in = fftw_alloc_complex(m);
        out = fftw_alloc_complex(m);
        forward = fftw_plan_dft_1d(static_cast<int>(m), in, out, FFTW_FORWARD,
                                   FFTW_ESTIMATE);
    }
    for (std::size_t k = 0; k <= n_; ++k) {
        in[k][0] = gamma[k];
        in[k][1] = 0.0;
    }
    for (std::size_t k = 1; k < n_; ++k) {
        in[m - k][0] = gamma[k];
        in[m - k][1] = 0.0;
    }
    fftw_execute(forward);

    double lam_max = 0.0, lam_min = 0.0;
    std::vector<double> lambda(m);
    for (std::size_t k = 0; k < m; ++k) {
        lambda[k] = out[k][0]; // imaginary parts are roundoff for symmetric input
        lam_max = std::max(lam_max, lambda[k]);
        lam_min = std::min(lam_min, lambda[k]);
    }
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_free(in);
        fftw_free(out);
    }

    if (lam_min < -1e-9 * lam_max) {
        // Embedding not nonnegative-definite at this size: exactness demands
        // the dense factorization instead of eigenvalue clipping.
        direct_ = true;
        return;
    }

    scaled_sqrt_lambda_.resize(m);
    for (std::size_t k = 0; k < m; ++k)
        scaled_sqrt_lambda_[k] =
            std::sqrt(std::max(lambda[k], 0.0) / static_cast<double>(m));

    std::lock_guard<std::mutex> lock(planner_mutex());
    fft_in_ = fftw_alloc_complex(m);
    fft_out_ = fftw_alloc_complex(m);
    plan_ = fftw_plan_dft_1d(static_cast<int>(m),
                             static_cast<fftw_complex*>(fft_in_),
                             static_cast<fftw_complex*>(fft_out_), FFTW_BACKWARD,
                             FFTW_ESTIMATE);
}

void FbmSampler::build_cholesky() {
    if (n_ > direct_size_limit)
        throw std::invalid_argument(
            "FbmSampler: direct factorization limited to n_steps <= 4096");
    const double dt = horizon_ / static_cast<double>(n_);
    const double scale = 0.5 * std::pow(dt, 2.0 * hurst_);
    const double two_h = 2.0 * hurst_;
    auto gamma = [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        return scale * (std::pow(kd + 1.0, two_h) - 2.0 * std::pow(kd, two_h) +
                        std::pow(std::abs(kd - 1.0), two_h));
    };

    chol_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = gamma(i - j);
            for (std::size_t k = 0; k < j; ++k) s -= chol_[i * n_ + k] * chol_[j * n_ + k];
            if (i == j) {
                if (s <= 0.0)
                    throw std::runtime_error("FbmSampler: covariance not positive definite");
                chol_[i * n_ + i] = std::sqrt(s);
            } else {
                chol_[i * n_ + j] = s / chol_[j * n_ + j];
            }
        }
    }
}

void FbmSampler::sample_increments(std::uint64_t component_seed,
                                   std::vector<double>& out) {
    NormalSampler normal(component_seed);
    out.resize(n_);

    if (direct_) {
        std::vector<double> z(n_);
        for (auto& v : z) v = normal();
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k <= i; ++k) s += chol_[i * n_ + k] * z[k];
            out[i] = s;
        }
        return;
    }

    // Hermitian complex-Gaussian weights: real draws at the symmetric bins
    // 0 and N, conjugate pairs elsewhere; then one unnormalized inverse DFT.
    const std::size_t m = 2 * n_;
    auto* in = static_cast<fftw_complex*>(fft_in_);
    auto* outc = static_cast<fftw_complex*>(fft_out_);
    in[0][0] = scaled_sqrt_lambda_[0] * normal();
    in[0][1] = 0.0;
    in[n_][0] = scaled_sqrt_lambda_[n_] * normal();
    in[n_][1] = 0.0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 1; k < n_; ++k) {
        const double u = normal() * inv_sqrt2;
        const double v = normal() * inv_sqrt2;
        in[k][0] = scaled_sqrt_lambda_[k] * u;
        in[k][1] = scaled_sqrt_lambda_[k] * v;
        in[m - k][0] = scaled_sqrt_lambda_[m - k] * u;
        in[m - k][1] = -scaled_sqrt_lambda_[m - k] * v;
    }
    fftw_execute(static_cast<fftw_plan>(plan_));
    for (std::size_t k = 0; k < n_; ++k) out[k] = outc[k][0];
}

SampledPath FbmSampler::sample(int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("FbmSampler: dim must be >= 1");
    SampledPath p;
    p.kind = PathKind::fbm;
    p.dim = dim;
    p.n_steps = n_;
    p.horizon = horizon_;
    p.seed = seed;
    p.has_seed = true;
    p.hurst = hurst_;
    p.has_hurst = true;
    const std::size_t d = static_cast<std::size_t>(dim);
    p.values.assign((n_ + 1) * d, 0.0);
    std::vector<double> inc;
    for (std::size_t c = 0; c < d; ++c) {
        sample_increments(derive_seed(seed, c), inc);
        double w = 0.0;
        for (std::size_t k = 0; k < n_; ++k) {
            w += inc[k];
            p.values[(k + 1) * d + c] = w;
        }
    }
    return p;
}

} // namespace roughflux::paths
