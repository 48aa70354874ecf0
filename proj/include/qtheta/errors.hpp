#pragma once

#include <stdexcept>
#include <string>

namespace qtheta {

// Argument outside an operation's mathematical domain (q outside (-1,0),
// ratio >= 1, n outside [0,k), ...).
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// A series or product cannot converge for the given parameters (|q| >= 1).
struct divergence_error : std::runtime_error {
    explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or summation would exceed its configured budget.
struct scale_error : std::runtime_error {
    explicit scale_error(const std::string& what) : std::runtime_error(what) {}
};

// A certified bound could not be produced at the maximum allowed precision,
// or a divisor ball contains zero.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// A tail majorant failed to contract (ratio >= 1 at the configured budget).
struct nonconvergence_error : std::runtime_error {
    explicit nonconvergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtheta
