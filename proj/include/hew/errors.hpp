#pragma once

#include <stdexcept>

namespace hew {

// Input shapes do not line up (grid sizes, parity, coefficient counts).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A scalar argument lies outside the mathematical domain of the operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Configuration or parameter validation failure (CLI exit code 2).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numeric failure at run time: root-finder divergence, degenerate geometry
// (CLI exit code 3).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hew
