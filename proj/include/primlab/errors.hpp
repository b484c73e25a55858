#pragma once

#include <stdexcept>
#include <string>

namespace primlab {

// Raised when a computation would exceed a configured resource limit
// (sieve size, enumeration range, subdivision floor, ...).
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an iterative scheme fails to reach its requested tolerance.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace primlab
