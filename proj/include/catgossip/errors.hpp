#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace catgossip {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-unique geodesic, out-of-domain argument, or violated locality bound.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two points (or model points) tagged with different spaces / curvatures.
class TagMismatch : public Error {
public:
    using Error::Error;
};

/// An eigen-solver or matrix function left the SPD cone.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InfeasibleTriangle : public Error {
public:
    using Error::Error;
};

class GraphError : public Error {
public:
    using Error::Error;
};

class DisconnectedGraph : public GraphError {
public:
    using GraphError::GraphError;
};

class InvalidEdge : public GraphError {
public:
    using GraphError::GraphError;
};

/// The requested operation has no meaning in the given space
/// (e.g. arithmetic averaging on the sphere).
class UnsupportedSpace : public Error {
public:
    using Error::Error;
};

class InitializationError : public Error {
public:
    using Error::Error;
};

class SizeMismatch : public Error {
public:
    using Error::Error;
};

/// A log-slope fit was requested on a window that is too short or
/// contains non-positive values.
class DegenerateSeries : public Error {
public:
    DegenerateSeries(const std::string& what, bool consensus)
        : Error(what), consensus_reached(consensus) {}
    bool consensus_reached;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// Invalid experiment configuration; `field` names the offending setting.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what) : Error(field + ": " + what), field(std::move(field)) {}
    std::string field;
};

/// Wraps an error raised inside a trial with its position.
class TrialFailure : public Error {
public:
    TrialFailure(std::size_t trial, std::size_t iter, const std::string& what)
        : Error("trial " + std::to_string(trial) + ", iteration " + std::to_string(iter) + ": " + what),
          trial(trial),
          iter(iter) {}
    std::size_t trial;
    std::size_t iter;
};

}  // namespace catgossip
