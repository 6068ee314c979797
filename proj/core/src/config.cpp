#include "roughflux/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "roughflux/errors.hpp"
#include "roughflux/io.hpp"

namespace roughflux::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

struct Raw {
    std::string source;
    std::map<std::string, std::map<std::string, Entry>> sections;

    [[noreturn]] void fail(const std::string& sec, const std::string& key,
                           const Entry* e, const std::string& why) const {
        std::ostringstream os;
        os << source;
        if (e) os << ":" << e->line;
        os << ": [" << sec << "] " << key << ": " << why;
        throw ConfigError(os.str());
    }

    const Entry* find(const std::string& sec, const std::string& key) const {
        auto si = sections.find(sec);
        if (si == sections.end()) return nullptr;
        auto ki = si->second.find(key);
        if (ki == si->second.end()) return nullptr;
        ki->second.used = true;
        return &ki->second;
    }

    std::string get_string(const std::string& sec, const std::string& key,
                           const std::string& def) const {
        const Entry* e = find(sec, key);
        return e ? e->value : def;
    }

    double get_double(const std::string& sec, const std::string& key,
                      double def) const {
        const Entry* e = find(sec, key);
        if (!e) return def;
        const char* begin = e->value.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || !std::isfinite(v))
            fail(sec, key, e, "expected a number, got '" + e->value + "'");
        return v;
    }

    long long get_int(const std::string& sec, const std::string& key,
                      long long def) const {
        const Entry* e = find(sec, key);
        if (!e) return def;
        const double v = get_double_checked(sec, key, *e);
        const long long n = std::llround(v);
        if (static_cast<double>(n) != v)
            fail(sec, key, e, "expected an integer, got '" + e->value + "'");
        return n;
    }

    bool get_bool(const std::string& sec, const std::string& key, bool def) const {
        const Entry* e = find(sec, key);
        if (!e) return def;
        std::string v = e->value;
        std::transform(v.begin(), v.end(), v.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        fail(sec, key, e, "expected true/false, got '" + e->value + "'");
    }

    std::vector<double> get_list(const std::string& sec, const std::string& key,
                                 std::vector<double> def) const {
        const Entry* e = find(sec, key);
        if (!e) return def;
        std::vector<double> out;
        std::stringstream ss(e->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            const char* begin = item.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0' || !std::isfinite(v))
                fail(sec, key, e, "bad list element '" + item + "'");
            out.push_back(v);
        }
        return out;
    }

  private:
    double get_double_checked(const std::string& sec, const std::string& key,
                              const Entry& e) const {
        const char* begin = e.value.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || !std::isfinite(v))
            fail(sec, key, &e, "expected a number, got '" + e.value + "'");
        return v;
    }
};

Raw tokenize(const std::string& text, const std::string& source_name) {
    Raw raw;
    raw.source = source_name;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(source_name + ":" + std::to_string(lineno) +
                                  ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(source_name + ":" + std::to_string(lineno) +
                                  ": empty section name");
            raw.sections[section]; // register even if empty
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source_name + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(source_name + ":" + std::to_string(lineno) +
                              ": empty key");
        if (section.empty())
            throw ConfigError(source_name + ":" + std::to_string(lineno) +
                              ": key '" + key + "' outside any [section]");
        auto [it, fresh] = raw.sections[section].emplace(key, Entry{value, lineno});
        if (!fresh)
            throw ConfigError(source_name + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "' in [" + section + "]");
    }
    return raw;
}

const char* known_sections[] = {"experiment", "path",  "solver",   "u0",
                                "estimator",  "sweep", "exponents"};

std::vector<int> to_int_list(const Raw& raw, const std::string& sec,
                             const std::string& key) {
    std::vector<int> out;
    for (double v : raw.get_list(sec, key, {})) {
        const long long n = std::llround(v);
        if (static_cast<double>(n) != v)
            throw ConfigError(raw.source + ": [" + sec + "] " + key +
                              ": expected integers");
        out.push_back(static_cast<int>(n));
    }
    return out;
}

[[noreturn]] void reject(const std::string& sec, const std::string& key,
                         const std::string& why) {
    throw ConfigError("config: [" + sec + "] " + key + ": " + why);
}

void require(bool ok, const std::string& sec, const std::string& key,
             const std::string& why) {
    if (!ok) reject(sec, key, why);
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source_name) {
    const Raw raw = tokenize(text, source_name);
    for (const auto& [sec, entries] : raw.sections) {
        if (std::find_if(std::begin(known_sections), std::end(known_sections),
                         [&](const char* s) { return sec == s; }) ==
            std::end(known_sections))
            throw ConfigError(source_name + ": unknown section [" + sec + "]");
        (void)entries;
    }

    ExperimentConfig c;
    c.kind = raw.get_string("experiment", "kind", "");
    c.out_dir = raw.get_string("experiment", "out", c.out_dir);
    c.ensemble = static_cast<int>(raw.get_int("experiment", "ensemble", c.ensemble));
    c.master_seed = static_cast<std::uint64_t>(
        raw.get_int("experiment", "master_seed",
                    static_cast<long long>(c.master_seed)));
    c.emit_svg = raw.get_bool("experiment", "emit_svg", c.emit_svg);
    c.label = raw.get_string("experiment", "label", c.label);

    c.path.kind = raw.get_string("path", "kind", c.path.kind);
    c.path.hurst = raw.get_double("path", "hurst", c.path.hurst);
    c.path.n_steps = static_cast<std::size_t>(
        raw.get_int("path", "n_steps", static_cast<long long>(c.path.n_steps)));
    c.path.horizon = raw.get_double("path", "horizon", c.path.horizon);
    c.path.dim = static_cast<int>(raw.get_int("path", "dim", c.path.dim));
    c.path.tent_peak = raw.get_double("path", "tent_peak", c.path.tent_peak);

    c.solver.flux_coeffs = raw.get_list("solver", "flux", c.solver.flux_coeffs);
    c.solver.nx = static_cast<int>(raw.get_int("solver", "nx", c.solver.nx));
    c.solver.cfl = raw.get_double("solver", "cfl", c.solver.cfl);
    c.solver.godunov = raw.get_bool("solver", "godunov", c.solver.godunov);
    c.solver.n_outputs =
        static_cast<int>(raw.get_int("solver", "n_outputs", c.solver.n_outputs));
    c.solver.output_times = raw.get_list("solver", "output_times", {});
    c.solver.nx_list = to_int_list(raw, "solver", "nx_list");

    c.solver.u0.preset = raw.get_string("u0", "preset", c.solver.u0.preset);
    c.solver.u0.offset = raw.get_double("u0", "offset", c.solver.u0.offset);
    c.solver.u0.scale = raw.get_double("u0", "scale", c.solver.u0.scale);
    c.solver.u0.ul = raw.get_double("u0", "ul", c.solver.u0.ul);
    c.solver.u0.ur = raw.get_double("u0", "ur", c.solver.u0.ur);
    c.solver.u0.x0 = raw.get_double("u0", "x0", c.solver.u0.x0);
    c.solver.u0.amp = raw.get_double("u0", "amp", c.solver.u0.amp);
    c.solver.u0.freq = static_cast<int>(raw.get_int("u0", "freq", c.solver.u0.freq));
    c.solver.u0.lambda0 = raw.get_double("u0", "lambda0", c.solver.u0.lambda0);
    c.solver.u0.terms = static_cast<int>(raw.get_int("u0", "terms", c.solver.u0.terms));

    c.estimator.a_min = raw.get_double("estimator", "a_min", c.estimator.a_min);
    c.estimator.a_max = raw.get_double("estimator", "a_max", c.estimator.a_max);
    c.estimator.n_a = static_cast<int>(raw.get_int("estimator", "n_a", c.estimator.n_a));
    c.estimator.gamma = raw.get_double("estimator", "gamma", c.estimator.gamma);
    c.estimator.kappas = raw.get_list("estimator", "kappas", {});
    c.estimator.alphas = raw.get_list("estimator", "alphas", {});
    c.estimator.lambda_min =
        raw.get_double("estimator", "lambda_min", c.estimator.lambda_min);
    c.estimator.lambda_max =
        raw.get_double("estimator", "lambda_max", c.estimator.lambda_max);
    c.estimator.n_lambda =
        static_cast<int>(raw.get_int("estimator", "n_lambda", c.estimator.n_lambda));
    c.estimator.fit_lo = raw.get_double("estimator", "fit_lo", c.estimator.fit_lo);
    c.estimator.fit_hi = raw.get_double("estimator", "fit_hi", c.estimator.fit_hi);
    c.estimator.h_levels =
        static_cast<int>(raw.get_int("estimator", "h_levels", c.estimator.h_levels));
    c.estimator.gagliardo_lambdas =
        raw.get_list("estimator", "gagliardo_lambdas", {});
    c.estimator.v_levels =
        static_cast<int>(raw.get_int("estimator", "v_levels", c.estimator.v_levels));

    c.hurst_list = raw.get_list("sweep", "hurst_list", {});
    c.compare_linear = raw.get_bool("sweep", "compare_linear", c.compare_linear);

    c.h_grid = raw.get_list("exponents", "h_grid", {});
    c.nu = raw.get_double("exponents", "nu", c.nu);

    for (const auto& [sec, entries] : raw.sections)
        for (const auto& [key, entry] : entries)
            if (!entry.used)
                throw ConfigError(source_name + ":" + std::to_string(entry.line) +
                                  ": unknown key '" + key + "' in [" + sec + "]");

    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), file);
}

void validate(const ExperimentConfig& c) {
    static const char* kinds[] = {"paths",  "irregularity",     "iota",
                                  "solve",  "regularity-sweep", "exponents",
                                  "weakform"};
    require(std::find_if(std::begin(kinds), std::end(kinds),
                         [&](const char* k) { return c.kind == k; }) !=
                std::end(kinds),
            "experiment", "kind",
            c.kind.empty() ? std::string("missing (choose one of paths, "
                                         "irregularity, iota, solve, "
                                         "regularity-sweep, exponents, weakform)")
                           : "unknown kind '" + c.kind + "'");
    require(!c.out_dir.empty(), "experiment", "out", "must not be empty");
    require(c.ensemble >= 1, "experiment", "ensemble", "must be >= 1");

    require(c.path.kind == "fbm" || c.path.kind == "brownian" ||
                c.path.kind == "linear" || c.path.kind == "tent",
            "path", "kind", "unknown kind '" + c.path.kind + "'");
    if (c.path.kind == "fbm")
        require(c.path.hurst > 0.0 && c.path.hurst < 1.0, "path", "hurst",
                "must lie in (0, 1)");
    require(c.path.n_steps >= 2, "path", "n_steps", "must be >= 2");
    require(c.path.horizon > 0.0 && std::isfinite(c.path.horizon), "path",
            "horizon", "must be positive and finite");
    require(c.path.dim >= 1, "path", "dim", "must be >= 1");
    if (c.path.kind == "tent")
        require(std::isfinite(c.path.tent_peak), "path", "tent_peak",
                "must be finite");

    const bool uses_solver = c.kind == "solve" || c.kind == "regularity-sweep" ||
                             c.kind == "weakform";
    if (uses_solver) {
        require(c.path.dim == 1, "path", "dim", "solver experiments require dim = 1");
        require(!c.solver.flux_coeffs.empty() && c.solver.flux_coeffs.size() >= 2,
                "solver", "flux", "need at least a linear coefficient");
        for (double a : c.solver.flux_coeffs)
            require(std::isfinite(a), "solver", "flux", "coefficients must be finite");
        bool nonconst = false;
        for (std::size_t i = 1; i < c.solver.flux_coeffs.size(); ++i)
            nonconst = nonconst || c.solver.flux_coeffs[i] != 0.0;
        require(nonconst, "solver", "flux", "flux must be non-constant");
        require(c.solver.nx >= 2, "solver", "nx", "must be >= 2");
        require(c.solver.cfl > 0.0 && c.solver.cfl <= 1.0, "solver", "cfl",
                "must lie in (0, 1]");
        require(c.solver.n_outputs >= 1, "solver", "n_outputs", "must be >= 1");
        for (double t : c.solver.output_times)
            require(t > 0.0 && t <= c.path.horizon + 1e-12, "solver",
                    "output_times", "times must lie in (0, horizon]");
        for (std::size_t i = 1; i < c.solver.output_times.size(); ++i)
            require(c.solver.output_times[i] > c.solver.output_times[i - 1],
                    "solver", "output_times", "must be strictly increasing");
        for (int nx : c.solver.nx_list)
            require(nx >= 2, "solver", "nx_list", "entries must be >= 2");

        const U0Spec& u = c.solver.u0;
        require(u.preset == "riemann" || u.preset == "sine" || u.preset == "lacunary",
                "u0", "preset", "unknown preset '" + u.preset + "'");
        require(std::isfinite(u.offset), "u0", "offset", "must be finite");
        require(u.scale >= 0.0 && std::isfinite(u.scale), "u0", "scale",
                "must be >= 0 (0 disables rescaling)");
        if (u.preset == "riemann") {
            require(std::isfinite(u.ul) && std::isfinite(u.ur), "u0", "ul",
                    "states must be finite");
            require(u.x0 > 0.0 && u.x0 < 1.0, "u0", "x0", "must lie in (0, 1)");
        }
        if (u.preset == "sine") {
            require(std::isfinite(u.amp), "u0", "amp", "must be finite");
            require(u.freq >= 1, "u0", "freq", "must be >= 1");
        }
        if (u.preset == "lacunary") {
            require(u.lambda0 > 0.0, "u0", "lambda0", "must be positive");
            require(u.terms >= 1 && u.terms <= 24, "u0", "terms",
                    "must lie in [1, 24]");
        }
        require(c.estimator.v_levels >= 8, "estimator", "v_levels", "must be >= 8");
    }

    if (c.kind == "irregularity") {
        require(c.estimator.a_min > 0.0 && c.estimator.a_min < c.estimator.a_max,
                "estimator", "a_min", "need 0 < a_min < a_max");
        require(c.estimator.a_max >= 4.0, "estimator", "a_max", "must be >= 4");
        require(c.estimator.n_a >= 8, "estimator", "n_a", "must be >= 8");
        require(c.estimator.gamma > 0.0 && c.estimator.gamma <= 1.0, "estimator",
                "gamma", "must lie in (0, 1]");
        for (double k : c.estimator.kappas)
            require(k > 0.0 && k < 1.0, "estimator", "kappas",
                    "entries must lie in (0, 1)");
    }
    if (c.kind == "iota") {
        for (double a : c.estimator.alphas)
            require(a > -0.9 && a < -0.1, "estimator", "alphas",
                    "entries must lie in (-0.9, -0.1)");
        require(c.estimator.lambda_min >= 1.0, "estimator", "lambda_min",
                "must be >= 1");
        require(c.estimator.lambda_max >= 16.0 * c.estimator.lambda_min,
                "estimator", "lambda_max", "need lambda_max >= 16 * lambda_min");
        require(c.estimator.n_lambda >= 4, "estimator", "n_lambda", "must be >= 4");
    }
    if (c.kind == "regularity-sweep") {
        for (double H : c.hurst_list)
            require(H > 0.0 && H < 1.0, "sweep", "hurst_list",
                    "entries must lie in (0, 1)");
        if (!c.hurst_list.empty())
            require(c.path.kind == "fbm", "sweep", "hurst_list",
                    "a Hurst sweep requires path kind fbm");
        require(c.estimator.fit_lo >= 0.0 && c.estimator.fit_hi >= 0.0,
                "estimator", "fit_lo", "fit bounds must be >= 0");
        if (c.estimator.fit_lo > 0.0 || c.estimator.fit_hi > 0.0)
            require(c.estimator.fit_lo < c.estimator.fit_hi, "estimator", "fit_lo",
                    "need fit_lo < fit_hi");
        require(c.estimator.h_levels == 0 || c.estimator.h_levels >= 4,
                "estimator", "h_levels", "must be 0 (auto) or >= 4");
        for (double l : c.estimator.gagliardo_lambdas)
            require(l > 0.05 && l < 0.95, "estimator", "gagliardo_lambdas",
                    "entries must lie in (0.05, 0.95)");
    }
    if (c.kind == "exponents") {
        for (double H : c.h_grid)
            require(H > 0.0 && H < 1.0, "exponents", "h_grid",
                    "entries must lie in (0, 1)");
        require(c.nu >= 1.0, "exponents", "nu", "must be >= 1");
    }
    if (c.kind == "weakform")
        require(c.path.dim == 1, "path", "dim", "weakform requires dim = 1");
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream os;
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + g17(v[i]);
        return s;
    };
    auto ilist = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    os << "[experiment]\n";
    os << "kind = " << c.kind << "\n";
    os << "out = " << c.out_dir << "\n";
    os << "ensemble = " << c.ensemble << "\n";
    os << "master_seed = " << c.master_seed << "\n";
    os << "emit_svg = " << (c.emit_svg ? "true" : "false") << "\n";
    os << "label = " << c.label << "\n\n";
    os << "[path]\n";
    os << "kind = " << c.path.kind << "\n";
    os << "hurst = " << g17(c.path.hurst) << "\n";
    os << "n_steps = " << c.path.n_steps << "\n";
    os << "horizon = " << g17(c.path.horizon) << "\n";
    os << "dim = " << c.path.dim << "\n";
    os << "tent_peak = " << g17(c.path.tent_peak) << "\n\n";
    os << "[solver]\n";
    os << "flux = " << list(c.solver.flux_coeffs) << "\n";
    os << "nx = " << c.solver.nx << "\n";
    os << "cfl = " << g17(c.solver.cfl) << "\n";
    os << "godunov = " << (c.solver.godunov ? "true" : "false") << "\n";
    os << "n_outputs = " << c.solver.n_outputs << "\n";
    if (!c.solver.output_times.empty())
        os << "output_times = " << list(c.solver.output_times) << "\n";
    if (!c.solver.nx_list.empty())
        os << "nx_list = " << ilist(c.solver.nx_list) << "\n";
    os << "\n[u0]\n";
    os << "preset = " << c.solver.u0.preset << "\n";
    os << "offset = " << g17(c.solver.u0.offset) << "\n";
    os << "scale = " << g17(c.solver.u0.scale) << "\n";
    os << "ul = " << g17(c.solver.u0.ul) << "\n";
    os << "ur = " << g17(c.solver.u0.ur) << "\n";
    os << "x0 = " << g17(c.solver.u0.x0) << "\n";
    os << "amp = " << g17(c.solver.u0.amp) << "\n";
    os << "freq = " << c.solver.u0.freq << "\n";
    os << "lambda0 = " << g17(c.solver.u0.lambda0) << "\n";
    os << "terms = " << c.solver.u0.terms << "\n\n";
    os << "[estimator]\n";
    os << "a_min = " << g17(c.estimator.a_min) << "\n";
    os << "a_max = " << g17(c.estimator.a_max) << "\n";
    os << "n_a = " << c.estimator.n_a << "\n";
    os << "gamma = " << g17(c.estimator.gamma) << "\n";
    if (!c.estimator.kappas.empty())
        os << "kappas = " << list(c.estimator.kappas) << "\n";
    if (!c.estimator.alphas.empty())
        os << "alphas = " << list(c.estimator.alphas) << "\n";
    os << "lambda_min = " << g17(c.estimator.lambda_min) << "\n";
    os << "lambda_max = " << g17(c.estimator.lambda_max) << "\n";
    os << "n_lambda = " << c.estimator.n_lambda << "\n";
    os << "fit_lo = " << g17(c.estimator.fit_lo) << "\n";
    os << "fit_hi = " << g17(c.estimator.fit_hi) << "\n";
    os << "h_levels = " << c.estimator.h_levels << "\n";
    if (!c.estimator.gagliardo_lambdas.empty())
        os << "gagliardo_lambdas = " << list(c.estimator.gagliardo_lambdas) << "\n";
    os << "v_levels = " << c.estimator.v_levels << "\n";
    if (!c.hurst_list.empty() || c.compare_linear) {
        os << "\n[sweep]\n";
        if (!c.hurst_list.empty())
            os << "hurst_list = " << list(c.hurst_list) << "\n";
        os << "compare_linear = " << (c.compare_linear ? "true" : "false") << "\n";
    }
    if (!c.h_grid.empty() || c.kind == "exponents") {
        os << "\n[exponents]\n";
        if (!c.h_grid.empty()) os << "h_grid = " << list(c.h_grid) << "\n";
        os << "nu = " << g17(c.nu) << "\n";
    }
    return os.str();
}

std::string config_schema() {
    return R"(# Experiment configuration schema (INI; '#' and ';' start comments).
# Every key is optional unless marked required; defaults in parentheses.

[experiment]
kind = regularity-sweep   # required: paths | irregularity | iota | solve |
                          #   regularity-sweep | exponents | weakform
out = runs/demo           # output directory, created if missing ("out")
ensemble = 20             # realizations; per-realization seeds derive from
                          #   master_seed by index (1)
master_seed = 42          # (1)
emit_svg = true           # write SVG plots alongside the CSVs (true)
label = demo              # free-form tag echoed into the manifest ("custom")

[path]
kind = fbm                # fbm | brownian | linear | tent ("fbm")
hurst = 0.5               # fbm Hurst parameter, in (0,1) (0.5)
n_steps = 1024            # time-grid steps N, grid has N+1 points (1024)
horizon = 1.0             # horizon T (1.0)
dim = 1                   # path dimension; solver kinds require 1 (1)
tent_peak = 0.3           # tent: w rises to this at T/2, back to 0 (0.3)

[solver]                  # used by solve / regularity-sweep / weakform
flux = 0,0,0.5            # polynomial coefficients a0,a1,a2,... (Burgers)
nx = 1024                 # spatial cells (1024)
cfl = 0.5                 # CFL number in (0,1] (0.5)
godunov = false           # Godunov flux instead of Engquist-Osher (false)
n_outputs = 8             # uniform output times in (0,T] (8)
output_times =            # explicit increasing list, overrides n_outputs
nx_list =                 # weakform: resolution sweep, e.g. 256,512,1024

[u0]
preset = sine             # riemann | sine | lacunary ("sine")
offset = 0.0              # constant added to any preset (0)
scale = 0                 # if > 0, rescale so max|u0 - offset| = scale (0)
ul = 1.0                  # riemann: state on [0, x0) (1)
ur = 0.0                  # riemann: state on [x0, 1) (0)
x0 = 0.25                 # riemann: jump location in (0,1) (0.25)
amp = 0.1                 # sine amplitude (0.1)
freq = 1                  # sine integer frequency >= 1 (1)
lambda0 = 0.3             # lacunary decay exponent > 0 (0.3)
terms = 10                # lacunary octave count in [1,24] (10)

[estimator]
a_min = 2.0               # irregularity scan lower frequency (2)
a_max = 256.0             # irregularity scan upper frequency (256)
n_a = 16                  # frequencies on the geometric grid (16)
gamma = 0.55              # window exponent in (0,1] (0.55)
kappas =                  # interpolation checks, each in (0,1) (none)
alphas = -0.3,-0.5,-0.7   # iota exponents in (-0.9,-0.1) (module default)
lambda_min = 16           # iota lambda grid, geometric (16)
lambda_max = 512          # needs lambda_max >= 16*lambda_min (512)
n_lambda = 13             # grid size >= 4 (13)
fit_lo = 0                # Besov fit window; 0,0 = default [4dx, 1/16]
fit_hi = 0
h_levels = 0              # modulus dyadic lags; 0 = auto from nx
gagliardo_lambdas =       # seminorm cross-check orders in (0.05,0.95) (none)
v_levels = 64             # Kruzhkov levels for the entropy defect (64)

[sweep]                   # regularity-sweep only
hurst_list = 0.25,0.5,0.75  # fbm arms; empty = single arm from [path]
compare_linear = false    # add a linear-path arm on identical data (false)

[exponents]               # exponents only
h_grid = 0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9  # table rows (this default)
nu = 1.0                  # nondegeneracy order >= 1 (1)
)";
}

} // namespace roughflux::config
