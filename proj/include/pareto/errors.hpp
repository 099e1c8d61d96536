#ifndef PARETO_ERRORS_HPP
#define PARETO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pareto {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes: numeric failures exit 1, everything else exits 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class CapabilityError : public Error {
public:
    using Error::Error;
};

class StructureError : public Error {
public:
    using Error::Error;
};

/// Numeric failures: non-finite values, stalls, divergence, breakdowns.
class NumericError : public Error {
public:
    using Error::Error;
};

class UndefinedCurvatureError : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateSampleError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace pareto

#endif
