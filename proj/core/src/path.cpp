#include "roughflux/path.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "roughflux/errors.hpp"
#include "roughflux/fbm.hpp"
#include "roughflux/fit.hpp"
#include "roughflux/rng.hpp"

namespace roughflux::paths {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate_grid(int dim, std::size_t n_steps, double horizon) {
    if (dim < 1) throw std::invalid_argument("path: dim must be >= 1");
    if (n_steps == 0) throw std::invalid_argument("path: n_steps must be >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("path: horizon must be > 0");
}

} // namespace

const char* kind_name(PathKind kind) {
    switch (kind) {
        case PathKind::fbm: return "fbm";
        case PathKind::brownian: return "brownian";
        case PathKind::linear: return "linear";
        case PathKind::custom: return "custom";
        case PathKind::sum: return "sum";
    }
    return "custom";
}

double SampledPath::increment_norm(std::size_t i, std::size_t j) const {
    double s = 0.0;
    const std::size_t d = static_cast<std::size_t>(dim);
    for (std::size_t c = 0; c < d; ++c) {
        const double diff = values[j * d + c] - values[i * d + c];
        s += diff * diff;
    }
    return std::sqrt(s);
}

std::string SampledPath::describe() const {
    std::ostringstream os;
    os << kind_name(kind) << "(";
    if (has_hurst) os << "H=" << hurst << ",";
    os << "d=" << dim << ",N=" << n_steps << ",T=" << horizon;
    if (has_seed) os << ",seed=" << seed;
    os << ")";
    return os.str();
}

SampledPath generate_fbm(double hurst, int dim, std::size_t n_steps, double horizon,
                         std::uint64_t seed) {
    // Range checks live in FbmSampler; dim is checked here.
    if (dim < 1) throw std::invalid_argument("generate_fbm: dim must be >= 1");
    FbmSampler sampler(hurst, n_steps, horizon);
    return sampler.sample(dim, seed);
}

SampledPath generate_brownian(int dim, std::size_t n_steps, double horizon,
                              std::uint64_t seed) {
    validate_grid(dim, n_steps, horizon);
    SampledPath p;
    p.kind = PathKind::brownian;
    p.dim = dim;
    p.n_steps = n_steps;
    p.horizon = horizon;
    p.seed = seed;
    p.has_seed = true;
    p.hurst = 0.5;
    p.has_hurst = true;
    const std::size_t d = static_cast<std::size_t>(dim);
    p.values.assign((n_steps + 1) * d, 0.0);
    const double root_dt = std::sqrt(p.dt());
    for (std::size_t c = 0; c < d; ++c) {
        NormalSampler normal(derive_seed(seed, c));
        double w = 0.0;
        for (std::size_t k = 1; k <= n_steps; ++k) {
            w += root_dt * normal();
            p.values[k * d + c] = w;
        }
    }
    return p;
}

SampledPath generate_linear(std::size_t n_steps, double horizon, int dim) {
    validate_grid(dim, n_steps, horizon);
    SampledPath p;
    p.kind = PathKind::linear;
    p.dim = dim;
    p.n_steps = n_steps;
    p.horizon = horizon;
    const std::size_t d = static_cast<std::size_t>(dim);
    p.values.assign((n_steps + 1) * d, 0.0);
    for (std::size_t k = 0; k <= n_steps; ++k)
        for (std::size_t c = 0; c < d; ++c)
            p.values[k * d + c] = p.time(k);
    return p;
}

SampledPath generate_custom(std::vector<double> values, int dim, double horizon) {
    if (dim < 1) throw std::invalid_argument("generate_custom: dim must be >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("generate_custom: horizon must be > 0");
    const std::size_t d = static_cast<std::size_t>(dim);
    if (values.size() < 2 * d || values.size() % d != 0)
        throw std::invalid_argument("generate_custom: need (N+1)*dim values with N >= 1");
    for (std::size_t c = 0; c < d; ++c)
        if (values[c] != 0.0)
            throw std::invalid_argument("generate_custom: paths must start at the origin");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("generate_custom: values must be finite");
    SampledPath p;
    p.kind = PathKind::custom;
    p.dim = dim;
    p.n_steps = values.size() / d - 1;
    p.horizon = horizon;
    p.values = std::move(values);
    return p;
}

SampledPath sum_paths(const SampledPath& p, const SampledPath& q) {
    if (p.dim != q.dim || p.n_steps != q.n_steps || p.horizon != q.horizon)
        throw std::invalid_argument("sum_paths: grids must match in (dim, N, T)");
    SampledPath r = p;
    r.kind = PathKind::sum;
    r.has_seed = false;
    r.has_hurst = false;
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += q.values[i];
    return r;
}

HoelderEstimate holder_exponent(const SampledPath& p, int h_dyadic_levels) {
    if (h_dyadic_levels < 3)
        throw std::invalid_argument("holder_exponent: need >= 3 dyadic levels");
    if ((std::size_t{1} << h_dyadic_levels) > p.n_steps)
        throw std::invalid_argument("holder_exponent: 2^levels must not exceed n_steps");

    HoelderEstimate est;
    const double dt = p.dt();
    for (int l = 0; l < h_dyadic_levels; ++l) {
        const std::size_t lag = std::size_t{1} << l;
        double sup = 0.0;
        for (std::size_t k = 0; k + lag <= p.n_steps; ++k)
            sup = std::max(sup, p.increment_norm(k, k + lag));
        est.modulus.emplace_back(static_cast<double>(lag) * dt, sup);
    }

    std::vector<double> lx, ly;
    for (const auto& [h, m] : est.modulus) {
        if (m > 0.0) {
            lx.push_back(std::log(h));
            ly.push_back(std::log(m));
        }
    }
    if (lx.size() < 2) {
        // Constant path: eta is defined on (0,1]; report the cap with a
        // flag so callers cannot silently misread the convention.
        est.eta_hat = 1.0;
        est.degenerate = true;
        est.fit_quality = 0.0;
        return est;
    }
    const LinFit fit = linear_fit(lx, ly);
    est.eta_hat = std::min(std::max(fit.slope, 0.0), 1.0);
    est.fit_quality = fit.r2;
    return est;
}

void write_path(std::ostream& os, const SampledPath& p) {
    os << "# " << kind_name(p.kind) << " " << (p.has_hurst ? g17(p.hurst) : "-") << " "
       << p.dim << " " << p.n_steps << " " << g17(p.horizon) << " ";
    if (p.has_seed)
        os << p.seed;
    else
        os << "-";
    os << "\n";
    const std::size_t d = static_cast<std::size_t>(p.dim);
    for (std::size_t k = 0; k <= p.n_steps; ++k) {
        os << g17(p.time(k));
        for (std::size_t c = 0; c < d; ++c) os << " " << g17(p.values[k * d + c]);
        os << "\n";
    }
}

SampledPath read_path(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw ConfigError("read_path: missing header line");
    std::istringstream hs(header);
    std::string hash, kind_str, hurst_str, seed_str;
    int dim = 0;
    std::size_t n_steps = 0;
    double horizon = 0.0;
    if (!(hs >> hash >> kind_str >> hurst_str >> dim >> n_steps >> horizon >> seed_str) ||
        hash != "#")
        throw ConfigError("read_path: malformed header, expected '# kind H d N T seed'");

    SampledPath p;
    bool known = false;
    for (PathKind k : {PathKind::fbm, PathKind::brownian, PathKind::linear,
                       PathKind::custom, PathKind::sum}) {
        if (kind_str == kind_name(k)) {
            p.kind = k;
            known = true;
        }
    }
    if (!known) throw ConfigError("read_path: unknown path kind '" + kind_str + "'");
    if (dim < 1 || n_steps == 0 || !(horizon > 0.0))
        throw ConfigError("read_path: invalid grid metadata");
    p.dim = dim;
    p.n_steps = n_steps;
    p.horizon = horizon;
    if (hurst_str != "-") {
        p.hurst = std::stod(hurst_str);
        p.has_hurst = true;
    }
    if (seed_str != "-") {
        p.seed = std::stoull(seed_str);
        p.has_seed = true;
    }

    const std::size_t d = static_cast<std::size_t>(dim);
    p.values.assign((n_steps + 1) * d, 0.0);
    std::string line;
    for (std::size_t k = 0; k <= n_steps; ++k) {
        if (!std::getline(is, line))
            throw ConfigError("read_path: truncated file at row " + std::to_string(k));
        std::istringstream ls(line);
        double t = 0.0;
        if (!(ls >> t)) throw ConfigError("read_path: bad row " + std::to_string(k));
        for (std::size_t c = 0; c < d; ++c)
            if (!(ls >> p.values[k * d + c]))
                throw ConfigError("read_path: bad row " + std::to_string(k));
    }
    for (std::size_t c = 0; c < d; ++c)
        if (p.values[c] != 0.0)
            throw ConfigError("read_path: path does not start at the origin");
    return p;
}

} // namespace roughflux::paths
