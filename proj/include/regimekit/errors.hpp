#pragma once

#include <stdexcept>
#include <string>

namespace regimekit {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CSV parsing, gaps, bad labels).
class LoadError : public Error {
public:
    using Error::Error;
};

// Violated numeric precondition (non-positive level, too few observations,
// inconsistent dimensions).
class DomainError : public Error {
public:
    using Error::Error;
};

// Non-finite density or degenerate normalization inside the filter
// recursion; carries the offending observation index.
class FilterError : public Error {
public:
    FilterError(const std::string& msg, std::ptrdiff_t t)
        : Error(msg + " at observation index " + std::to_string(t)), t_(t) {}
    std::ptrdiff_t t_index() const { return t_; }

private:
    std::ptrdiff_t t_;
};

// Estimation could not produce a usable optimum.
class EstimationError : public Error {
public:
    using Error::Error;
};

} // namespace regimekit
