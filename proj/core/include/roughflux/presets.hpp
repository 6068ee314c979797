#pragma once

#include <string>
#include <vector>

#include "roughflux/config.hpp"

namespace roughflux::config {

// Named, fully populated experiment configurations:
//   exp-irregularity  rho/gamma scan + interpolation checks, fBm H=0.5
//   exp-iota          scaling-index scan, fBm H=0.5, 100 seeds
//   exp-regularity    Burgers + lacunary data, Hurst sweep {0.25,0.5,0.75}
//   exp-det-vs-noise  paired linear vs fBm H=0.25 arms on identical data
//   exp-weakform      stationary-shock kinetic residual, resolution sweep
// Unknown names raise ConfigError.
ExperimentConfig preset(const std::string& name);

std::vector<std::string> preset_names();

} // namespace roughflux::config
