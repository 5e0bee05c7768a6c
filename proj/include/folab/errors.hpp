#pragma once

#include <stdexcept>
#include <string>

namespace folab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (mismatched variables, zero form, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation needs a number outside the supported coefficient tower.
class FieldExtensionError : public Error {
 public:
  using Error::Error;
};

/// A decision cannot be certified at the available jet order / precision.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// The reduction engine hit its depth limit.
class DepthExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace folab
