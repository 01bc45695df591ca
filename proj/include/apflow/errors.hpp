#pragma once

#include <stdexcept>
#include <string>

namespace apflow {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Configuration / input errors (CLI maps these to exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

struct UnknownKey : ConfigError {
    using ConfigError::ConfigError;
};
struct UnknownProblem : ConfigError {
    using ConfigError::ConfigError;
};
struct BadValue : ConfigError {
    using ConfigError::ConfigError;
};

struct NonSquareCells : Error {
    using Error::Error;
};
struct TooFewCells : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct WrongDimension : Error {
    using Error::Error;
};
struct NonPositiveDensity : Error {
    using Error::Error;
};
struct EpsilonTooLarge : Error {
    using Error::Error;
};
struct NonNestedGrids : Error {
    using Error::Error;
};
struct StepLimitExceeded : Error {
    using Error::Error;
};

/// Density lost positivity during a time step. Signals that the
/// diffusion coefficient was too small for the current data.
struct PositivityLost : Error {
    int cell;
    long step;
    double value;
    PositivityLost(const std::string& msg, int cell_, long step_, double value_)
        : Error(msg), cell(cell_), step(step_), value(value_) {}
};

/// Violation of an internal contract (e.g. imaginary residue of a
/// spectral solve above tolerance). Indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace apflow
