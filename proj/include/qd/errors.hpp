#pragma once

#include <stdexcept>
#include <string>

namespace qd {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input: bad indices, non-group tables, invalid lattice sizes.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

/// A requested object exceeds a hard size limit.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& msg) : Error(msg) {}
};

/// Bad runtime configuration (coupling files, CLI options).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A numerical routine failed to reach its target accuracy.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg, int iterations = -1)
      : Error(msg), iterations(iterations) {}
  int iterations;
};

/// The class-sum eigenproblem could not separate irreducibles.
class NumericDegeneracyError : public NumericError {
 public:
  explicit NumericDegeneracyError(const std::string& msg) : NumericError(msg) {}
};

/// A decomposition target is not a nonnegative-integer combination of irreducibles.
class NotACharacterError : public Error {
 public:
  explicit NotACharacterError(const std::string& msg) : Error(msg) {}
};

/// A structural identity that must hold by construction failed numerically.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

}  // namespace qd
