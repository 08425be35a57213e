#pragma once

#include <stdexcept>
#include <string>

namespace cloakwave {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (z = 0 for Y, eps = 0 tensors, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A recurrence or product left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Iterative method (root finder, quadrature) failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Root bracket without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Interface system is numerically singular: an exact resonance was hit.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, int mode) : Error(what), mode_(mode) {}
  int mode() const noexcept { return mode_; }

 private:
  int mode_;
};

/// Modal truncation does not meet the tail criterion.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Point evaluation exactly on a material interface.
class InterfaceError : public Error {
 public:
  using Error::Error;
};

/// Configuration outside what the solver supports (e.g. resonant config for a rate sweep).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

/// Input validation failure (bad config values).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cloakwave
