#pragma once

#include <stdexcept>
#include <string>

namespace roughflux {

// Raised for malformed experiment configuration (unknown keys, out-of-range
// values, unreadable files). The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numerical invariant is violated at runtime (NaN in the solver
// state, entropy production below the negativity tolerance). The CLI maps
// this to exit code 2. Precondition violations on API arguments use
// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace roughflux
