#pragma once

#include <stdexcept>
#include <string>

namespace splitci {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cholesky hit a non-positive pivot.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidRank : public Error {
 public:
  using Error::Error;
};

/// A positive semidefinite precondition failed its eigenvalue check.
class NotPsd : public Error {
 public:
  using Error::Error;
};

/// A Loewner-order precondition failed; the message names the ordering.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class MaxIterExceeded : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain (w outside (0,1), bad option values).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A split pair or split estimate failed validation. `field()` names the
/// offending member ("P1d", "P2i", "P1d+P1i", ...).
class InvalidSplitPair : public Error {
 public:
  InvalidSplitPair(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace splitci
