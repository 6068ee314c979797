#include "roughflux/presets.hpp"

#include "roughflux/errors.hpp"

namespace roughflux::config {

std::vector<std::string> preset_names() {
    return {"exp-irregularity", "exp-iota", "exp-regularity", "exp-det-vs-noise",
            "exp-weakform"};
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.label = name;
    c.out_dir = "runs/" + name;
    if (name == "exp-irregularity") {
        c.kind = "irregularity";
        c.ensemble = 100;
        c.master_seed = 11;
        c.path.kind = "fbm";
        c.path.hurst = 0.5;
        c.path.n_steps = 16384;
        c.path.horizon = 1.0;
        c.estimator.a_min = 2.0;
        c.estimator.a_max = 256.0;
        c.estimator.n_a = 16;
        c.estimator.gamma = 0.55;
        c.estimator.kappas = {0.25, 0.5, 0.75};
    } else if (name == "exp-iota") {
        c.kind = "iota";
        c.ensemble = 100;
        c.master_seed = 11;
        c.path.kind = "fbm";
        c.path.hurst = 0.5;
        c.path.n_steps = 8192;
        c.path.horizon = 1.0;
        c.estimator.alphas = {-0.3, -0.5, -0.7};
        c.estimator.lambda_min = 16.0;
        c.estimator.lambda_max = 512.0;
        c.estimator.n_lambda = 13;
    } else if (name == "exp-regularity") {
        c.kind = "regularity-sweep";
        c.ensemble = 20;
        c.master_seed = 42;
        c.path.kind = "fbm";
        c.path.n_steps = 256;
        c.path.horizon = 1.0;
        c.hurst_list = {0.25, 0.5, 0.75};
        c.solver.nx = 1024;
        c.solver.cfl = 0.5;
        c.solver.n_outputs = 8;
        c.solver.u0.preset = "lacunary";
        c.solver.u0.lambda0 = 0.3;
        c.solver.u0.terms = 10;
        c.solver.u0.scale = 0.5;
    } else if (name == "exp-det-vs-noise") {
        c = preset("exp-regularity");
        c.label = name;
        c.out_dir = "runs/" + name;
        c.hurst_list = {0.25};
        c.compare_linear = true;
    } else if (name == "exp-weakform") {
        c.kind = "weakform";
        c.ensemble = 1;
        c.master_seed = 1;
        c.path.kind = "linear";
        c.path.n_steps = 32;
        c.path.horizon = 0.25;
        c.solver.nx = 2048;
        c.solver.nx_list = {256, 512, 1024, 2048};
        c.solver.cfl = 0.5;
        c.solver.n_outputs = 32; // one output per path step
        c.solver.u0.preset = "riemann";
        c.solver.u0.ul = 1.0;
        c.solver.u0.ur = -1.0;
        c.solver.u0.x0 = 0.5;
        c.estimator.v_levels = 64;
    } else {
        throw ConfigError("unknown preset '" + name +
                          "' (known: exp-irregularity, exp-iota, exp-regularity, "
                          "exp-det-vs-noise, exp-weakform)");
    }
    validate(c);
    return c;
}

} // namespace roughflux::config
