#pragma once

#include <stdexcept>
#include <string>

namespace geodesy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (pole passed to a projection,
/// odd Wallis index, eccentricity >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative scheme failed to contract or hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Degenerate geometry or rank-deficient linear system.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (angle strings, CSV rows, registry files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace geodesy
