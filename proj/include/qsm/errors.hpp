// errors.hpp
// Exception hierarchy shared by all qsm modules.

#pragma once

#include <stdexcept>
#include <string>

namespace qsm {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Qubit count or vector dimension outside the supported range.
class SizeError : public Error {
public:
    using Error::Error;
};

// Momentum or slot index outside the valid window.
class IndexError : public Error {
public:
    using Error::Error;
};

// Malformed argument (bad qubit labels, dimension mismatch, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Operation applied to a state in the wrong basis.
class StateError : public Error {
public:
    using Error::Error;
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Time series too short for the requested window.
class WindowError : public Error {
public:
    using Error::Error;
};

// Too few usable data points to perform a fit.
class InsufficientSupportError : public Error {
public:
    using Error::Error;
};

// Numerical invariant violated beyond the accepted floor (e.g. a density
// matrix eigenvalue below -1e-10). Reported, never silently clamped.
class NumericalDegradationError : public Error {
public:
    using Error::Error;
};

// Invalid configuration or command line (maps to exit code 2).
class UsageError : public Error {
public:
    using Error::Error;
};

// File system failure, reported with path context (maps to exit code 4).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qsm
