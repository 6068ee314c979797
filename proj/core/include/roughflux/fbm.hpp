#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "roughflux/path.hpp"

namespace roughflux::paths {

// Exact fractional Gaussian noise sampler for fixed (H, N, T): the circulant
// embedding spectrum is precomputed once, each sample() costs one inverse
// FFT per component. If the embedding is not nonnegative-definite at the
// requested size (not observed for fGn at the sizes used here, but guarded),
// the sampler falls back to a dense Cholesky factorization of the increment
// covariance (limited to N <= 4096).
//
// A sampler owns FFT buffers/plans: sample() is NOT thread-safe; create one
// sampler per worker for parallel ensembles. Construction and destruction
// serialize internally on the FFT planner lock.
class FbmSampler {
public:
    FbmSampler(double hurst, std::size_t n_steps, double horizon,
               bool force_direct = false);
    ~FbmSampler();
    FbmSampler(const FbmSampler&) = delete;
    FbmSampler& operator=(const FbmSampler&) = delete;

    // Path of `dim` independent components; draws for component c come from
    // a NormalSampler seeded with derive_seed(seed, c).
    SampledPath sample(int dim, std::uint64_t seed);

    // True when the Cholesky fallback is active instead of the FFT route.
    bool direct_factorization() const { return direct_; }

    double hurst() const { return hurst_; }
    std::size_t n_steps() const { return n_; }
    double horizon() const { return horizon_; }

private:
    void build_spectrum();
    void build_cholesky();
    void sample_increments(std::uint64_t component_seed, std::vector<double>& out);

    double hurst_;
    double horizon_;
    std::size_t n_;
    bool direct_ = false;
    std::vector<double> scaled_sqrt_lambda_; // sqrt(lambda_k / 2N), FFT route
    std::vector<double> chol_;               // packed lower triangular, direct route
    void* fft_in_ = nullptr;                 // fftw_complex[2N]
    void* fft_out_ = nullptr;                // fftw_complex[2N]
    void* plan_ = nullptr;                   // fftw_plan (backward, unnormalized)
};

} // namespace roughflux::paths
