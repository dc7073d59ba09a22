#pragma once

#include <stdexcept>
#include <string>

namespace dagger {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different rings, monoids or ambient spaces.
class DescriptorMismatch : public Error {
 public:
  explicit DescriptorMismatch(const std::string& what)
      : Error("descriptor mismatch: " + what) {}
};

/// A quantity needed by the computation is indistinguishable from zero at
/// the working precision.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error("precision exhausted: " + what) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Malformed or out-of-contract input (bad JSON, non-prime modulus, ...).
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error("invalid input: " + what) {}
};

}  // namespace dagger
