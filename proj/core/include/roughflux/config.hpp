#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace roughflux::config {

// Driving-path specification shared by all experiment kinds.
struct PathSpec {
    std::string kind = "fbm"; // fbm | brownian | linear | tent
    double hurst = 0.5;       // fbm only
    std::size_t n_steps = 1024;
    double horizon = 1.0;
    int dim = 1;
    double tent_peak = 0.3; // tent only: 0 -> peak at T/2 -> 0
};

// Initial-datum preset on the unit torus.
struct U0Spec {
    std::string preset = "sine"; // riemann | sine | lacunary
    double offset = 0.0;         // constant added to any preset
    double scale = 0.0;          // if > 0, rescale so max|u0 - offset| = scale
    double ul = 1.0, ur = 0.0, x0 = 0.25; // riemann: ul on [0,x0), ur on [x0,1)
    double amp = 0.1;                     // sine amplitude
    int freq = 1;                         // sine integer frequency
    double lambda0 = 0.3;                 // lacunary decay exponent
    int terms = 10;                       // lacunary octave count
};

struct SolverSpec {
    std::vector<double> flux_coeffs = {0.0, 0.0, 0.5}; // polynomial a0,a1,...
    int nx = 1024;
    double cfl = 0.5;
    bool godunov = false; // Godunov numerical flux instead of Engquist-Osher
    U0Spec u0;
    int n_outputs = 8;                // uniform output times in (0, T]
    std::vector<double> output_times; // explicit override of n_outputs
    std::vector<int> nx_list;         // weakform refinement sweep
};

struct EstimatorSpec {
    // irregularity scan
    double a_min = 2.0, a_max = 256.0;
    int n_a = 16;
    double gamma = 0.55;
    std::vector<double> kappas; // interpolation checks; empty = none
    // iota scan
    std::vector<double> alphas; // empty = module default
    double lambda_min = 16.0, lambda_max = 512.0;
    int n_lambda = 13;
    // regularity fit
    double fit_lo = 0.0, fit_hi = 0.0; // 0 = module default window
    int h_levels = 0;                  // modulus lags; 0 = auto from nx
    std::vector<double> gagliardo_lambdas; // cross-check seminorm orders
    // kinetic measure
    int v_levels = 64;
};

struct ExperimentConfig {
    // paths | irregularity | iota | solve | regularity-sweep | exponents |
    // weakform
    std::string kind;
    std::string out_dir = "out";
    int ensemble = 1;
    std::uint64_t master_seed = 1;
    bool emit_svg = true;
    std::string label = "custom";

    PathSpec path;
    SolverSpec solver;
    EstimatorSpec estimator;

    // regularity-sweep arms; empty = single arm from `path`
    std::vector<double> hurst_list;
    bool compare_linear = false; // extra linear-path arm on identical data

    // exponents table
    std::vector<double> h_grid;
    double nu = 1.0;
};

// Parse INI-style text (sections [experiment] [path] [solver] [u0]
// [estimator] [sweep] [exponents]; '#'/';' comments). Unknown sections or
// keys and malformed values raise ConfigError with the source line.
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& source_name = "<config>");
ExperimentConfig load_config(const std::string& file);

// Range-checks every field against the owning module's preconditions;
// throws ConfigError naming the section, key, and reason.
void validate(const ExperimentConfig& c);

// Full-echo INI serialization; parse_config_text(serialize_config(c))
// reproduces c.
std::string serialize_config(const ExperimentConfig& c);

// Documented schema for --schema.
std::string config_schema();

} // namespace roughflux::config
