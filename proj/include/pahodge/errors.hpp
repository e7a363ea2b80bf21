#pragma once

#include <stdexcept>
#include <string>

namespace pahodge {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (non-unit divisor, argument
/// outside a convergence domain, repeated eigenvalues, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested computation cannot be carried out at the available
/// precision (a pivot or a difference is indistinguishable from zero).
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad JSON, wrong schema, inconsistent sizes.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pahodge
