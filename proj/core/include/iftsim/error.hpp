#pragma once

#include <stdexcept>
#include <string>

namespace ift {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid model parameters, out-of-range sites, malformed specs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Numerical failure (non-converged eigensolve, unstable rescale, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Configuration file problems, reported with key context.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace ift
