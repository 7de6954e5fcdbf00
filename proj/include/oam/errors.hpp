#pragma once

#include <stdexcept>
#include <string>

namespace oam {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument value (non-positive length, zero radius, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Requested mode outside the supported family (e.g. closed-form intensity with p != 0).
class UnsupportedModeError : public Error {
public:
    explicit UnsupportedModeError(const std::string& what) : Error(what) {}
};

/// A synthesis grid violates a coverage or sampling guard. Names the failing guard.
class GridResolutionError : public Error {
public:
    explicit GridResolutionError(const std::string& what) : Error(what) {}
};

/// Two fields do not share the same grid (n, dx, z, wavelength).
class ShapeMismatchError : public Error {
public:
    explicit ShapeMismatchError(const std::string& what) : Error(what) {}
};

/// Field has no power; moments are undefined.
class DegenerateFieldError : public Error {
public:
    explicit DegenerateFieldError(const std::string& what) : Error(what) {}
};

/// Propagated beam would not fit the (padded) grid window.
class PropagationWindowError : public Error {
public:
    explicit PropagationWindowError(const std::string& what) : Error(what) {}
};

/// Feature detection on a field failed (e.g. no usable intensity ring).
class AnalysisError : public Error {
public:
    explicit AnalysisError(const std::string& what) : Error(what) {}
};

/// Config file cannot be parsed or fails validation. Messages cite line numbers.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// An embedded numerical self-check failed (analytic vs numeric disagreement).
class ToleranceError : public Error {
public:
    explicit ToleranceError(const std::string& what) : Error(what) {}
};

} // namespace oam
