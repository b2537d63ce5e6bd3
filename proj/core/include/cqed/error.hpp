#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

// All library failures derive from Error so callers (the CLI in particular)
// can separate configuration problems from numerical ones.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Zero qubit-resonator detuning: the dispersive expansion is singular.
class SingularityError : public Error {
public:
    using Error::Error;
};

// Base for failures that the CLI maps to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateSteadyStateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PositivityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class FitError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class AssignmentError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnresolvedSplittingError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Physically inconsistent parameters (negative rates, excitation above decay).
class ParameterError : public Error {
public:
    using Error::Error;
};

class UndefinedError : public Error {
public:
    using Error::Error;
};

class SweepError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace cqed
