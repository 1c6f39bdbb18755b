#pragma once

#include <stdexcept>
#include <string>

namespace relmass {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A physical parameter violates its structural constraints (e.g. m0 <= 0).
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

// Config file could not be parsed; carries the offending 1-based line number
// (0 when the problem is not tied to a specific line).
class ConfigError : public Error {
public:
    ConfigError(const std::string& msg, int line_number)
        : Error(line_number > 0 ? "config line " + std::to_string(line_number) + ": " + msg
                                : "config: " + msg),
          line(line_number) {}
    int line;
};

// Not enough information in the data to compute the requested quantity
// (e.g. too few oscillation zero crossings in a trajectory).
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// A velocity at or above the speed of light was supplied.
class InvalidVelocityError : public Error {
public:
    using Error::Error;
};

// A numerical routine failed (eigensolver breakdown, non-finite values, ...).
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace relmass
