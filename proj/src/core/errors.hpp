#pragma once

#include <stdexcept>
#include <string>

namespace devbound {

// Base class for all library failures.  Subclasses map 1:1 onto the
// status codes of the C API.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (lengths, non-finite entries, weight sum off).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Argument outside a bound's mathematical hypotheses (r < 1, x <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Weight vector does not satisfy the regime a bound requires.
class RegimeError : public Error {
public:
    using Error::Error;
};

// Window (or prefix) with vanishing mass.
class DegenerateWindowError : public Error {
public:
    using Error::Error;
};

// Data not sorted in the direction a statement requires.
class OrderError : public Error {
public:
    using Error::Error;
};

// Inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace devbound
