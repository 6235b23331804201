#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kklcsd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Scenario data violates one of the model hypotheses (compatibility,
/// positive growth, zero tail).
class InvalidScenarioError : public Error {
public:
    using Error::Error;
};

/// Two objects that must share a grid or a dimension do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Least-squares problem without regularization and with a rank-deficient
/// operator.
class IllPosedError : public Error {
public:
    using Error::Error;
};

/// An operation was called on data that does not satisfy its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Iterative solver stopped at its iteration limit. Carries the last iterate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> last_iterate)
        : Error(what), last_iterate_(std::move(last_iterate)) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

private:
    std::vector<double> last_iterate_;
};

/// A constructive routine found no admissible answer with the given inputs.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// Configuration file could not be parsed or failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace kklcsd
