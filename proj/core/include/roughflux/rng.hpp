#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace roughflux {

// One round of the splitmix64 output function; bijective on uint64.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stream seed for realization `index` of an ensemble with the given master
// seed. Two splitmix rounds keep nearby (master, index) pairs uncorrelated.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Standard normal draws on top of mt19937_64 via Box-Muller. mt19937_64 is
// bit-specified by the standard, so streams are reproducible for a fixed
// seed on a fixed platform/libm.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    // Uniform draw in (0, 1] (53-bit mantissa; never 0, safe under log).
    double uniform() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace roughflux
