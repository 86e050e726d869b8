#pragma once

#include <stdexcept>
#include <string>

namespace wdisp {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (non-unit, ring mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Not enough Witt components left to perform the requested operation.
class PrecisionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A hard size cap was hit (symbolic blowup, enumeration budget).
class ResourceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wdisp
