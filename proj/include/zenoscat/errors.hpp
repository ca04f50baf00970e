#pragma once

#include <stdexcept>
#include <string>

namespace zenoscat {

// Malformed or inconsistent input (config text, tables, parameters).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failure of a numerical stage: non-convergence, ambiguous ladders,
// insufficient Fourier window, threshold-degenerate channels.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace zenoscat
