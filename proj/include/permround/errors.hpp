#pragma once

#include <stdexcept>
#include <string>

namespace permround {

/// Input violates a documented precondition or type invariant
/// (dimension mismatch, non-orthogonal matrix, non-bijective image, ...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed in a way that indicates a broken
/// environment rather than bad input (e.g. repeated tied Gaussian draws).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or stream.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace permround
