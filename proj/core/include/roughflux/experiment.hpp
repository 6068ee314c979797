#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughflux/config.hpp"
#include "roughflux/path.hpp"

namespace roughflux::experiment {

struct FileRecord {
    std::string name;     // relative to the output directory
    std::size_t rows = 0; // CSV data rows; 0 for non-tabular files
};

struct RunManifest {
    config::ExperimentConfig cfg;
    std::string version;
    double wall_seconds = 0.0;
    std::vector<std::uint64_t> seeds; // per-realization stream seeds
    std::vector<FileRecord> files;
    bool complete = false; // false while running or after a failure
    std::string summary;   // human-readable result lines
};

// Executes the experiment described by cfg (parallel over realizations,
// reductions ordered by realization index), writes CSV/SVG artifacts plus
// manifest.json and a config.ini echo into cfg.out_dir, and returns the
// finalized manifest. The manifest is written in a running state before any
// computation and rewritten at the end; on failure it is left on disk with
// complete=false and the error recorded. Rerunning an identical config
// rewrites identical data files (the manifest's wall clock differs).
RunManifest run_experiment(const config::ExperimentConfig& cfg);

// Building blocks shared with the CLI and tests.
std::vector<double> build_u0(const config::U0Spec& u, int nx);
paths::SampledPath build_path(const config::PathSpec& ps, std::uint64_t seed);
std::vector<double> uniform_output_times(const config::PathSpec& ps, int n_outputs);

} // namespace roughflux::experiment
