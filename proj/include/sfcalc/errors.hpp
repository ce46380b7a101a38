#pragma once

#include <stdexcept>
#include <string>

namespace sfcalc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A point fell outside the domain of a function or region.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A documented precondition of an operation was violated.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

/// A linear solve hit a (near-)singular operator.  Carries the sphere
/// [s] at which the pseudo-resolvent degenerated.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, double s0, double s1)
        : Error(msg), sphere_s0(s0), sphere_s1(s1) {}
    double sphere_s0;
    double sphere_s1;
};

/// Contour construction failed (separation/clearance violated, empty input).
class ConstructionError : public Error {
public:
    explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

/// Malformed job specification text.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = -1)
        : Error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_no(line) {}
    int line_no;
};

} // namespace sfcalc
