#pragma once

#include <stdexcept>
#include <string>

namespace chenflow {

// Incompatible objects were combined (mismatched alphabet, truncation,
// dimension) or an input file/flag set is malformed.
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition fails (nonzero constant term, odd dimension,
// spectral-radius guard, ...).
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A request whose cost grows factorially/exponentially exceeded its guard.
struct cost_error : std::length_error {
    explicit cost_error(const std::string& what) : std::length_error(what) {}
};

// A numerical procedure failed to converge or produced an invalid value.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive ODE integration ran out of steps (possible blow-up).
struct integration_error : numeric_error {
    explicit integration_error(const std::string& what) : numeric_error(what) {}
};

}  // namespace chenflow
