#pragma once

#include <stdexcept>
#include <string>

namespace wgmm {

// Bad or inconsistent user input (config files, partitions, axis specs).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown (non-finite values, eigensolver failure, precision
// budget exceeded).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires a stable drift matrix but the spectral abscissa is
// non-negative.
struct unstable_error : std::runtime_error {
    explicit unstable_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wgmm
