#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

// Requested tolerance or certified sign could not be reached at the
// configured precision limits.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// A rigorous hypothesis check (series monotonicity, positivity, ...) failed,
// so no certified result can be produced.
struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative scheme failed to converge within its iteration budget.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace resonance
