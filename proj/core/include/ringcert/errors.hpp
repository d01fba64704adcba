#pragma once

#include <stdexcept>
#include <string>

namespace ringcert {

/// Raised when operands live in different rings, name unknown variables, or
/// otherwise violate the shape an operation requires.
class StructuralError : public std::invalid_argument {
 public:
  explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a documented mathematical precondition does not hold
/// (e.g. testing I as a reduction of J when I is not contained in J).
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed serialized input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ringcert
