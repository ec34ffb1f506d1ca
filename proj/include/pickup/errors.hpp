#pragma once

#include <stdexcept>
#include <string>

namespace pickup {

/// Thrown when an expression containing 1/(omega*C) is evaluated at f = 0.
class DivergentReactance : public std::domain_error {
public:
    explicit DivergentReactance(const std::string& what)
        : std::domain_error(what) {}
};

/// Thrown when the maximum-magnitude sample sits on the first or last sample
/// of a spectrum, so no interior peak exists to interpolate.
class PeakAtEdge : public std::runtime_error {
public:
    explicit PeakAtEdge(const std::string& what)
        : std::runtime_error(what) {}
};

/// Thrown for wire gauges outside the built-in design table.
class UnknownGauge : public std::invalid_argument {
public:
    explicit UnknownGauge(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Thrown when a curve fit is handed data it cannot determine a curve from
/// (too few distinct abscissae, nonpositive values on a log fit, ...).
class DegenerateInput : public std::invalid_argument {
public:
    explicit DegenerateInput(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Thrown when a requested turn count cannot be wound inside the bobbin.
class DoesNotFit : public std::runtime_error {
public:
    explicit DoesNotFit(const std::string& what)
        : std::runtime_error(what) {}
};

/// Thrown by the file loaders on malformed input.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace pickup
