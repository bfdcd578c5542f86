#ifndef BREQUANT_ERRORS_HPP
#define BREQUANT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brequant {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// A root-finding bracket that should exist by concavity does not;
// indicates an inconsistent model rather than bad input.
class BracketError : public Error {
public:
    explicit BracketError(const std::string& what) : Error(what) {}
};

// Degenerate geometry, e.g. coincident decision weights or gradients.
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& what) : Error(what) {}
};

// An iterative solver exhausted its budget without meeting tolerance.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

// Requested gradient value has no preimage in the simplex interior.
class OutOfImageError : public Error {
public:
    explicit OutOfImageError(const std::string& what) : Error(what) {}
};

// Not enough data points for a statistical fit.
class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& what) : Error(what) {}
};

// Malformed serialized artifact.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace brequant

#endif
