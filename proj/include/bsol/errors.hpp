#pragma once

#include <stdexcept>
#include <string>

namespace bsol {

/// Thrown when an enumeration exceeds its node budget.
struct ResourceGuardError : std::runtime_error {
    explicit ResourceGuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an exact integer count would overflow its carrier type.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by limit_gf when no rational function within the degree bounds
/// reproduces the truncated series; carries the depth that was used.
struct NoFitError : std::runtime_error {
    int depth_used;
    NoFitError(const std::string& what, int depth) : std::runtime_error(what), depth_used(depth) {}
};

}  // namespace bsol
