#pragma once

#include <stdexcept>
#include <string>

namespace kreimer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input errors.
class ParseError : public Error {
 public:
  using Error::Error;
};
class NonPositiveWeight : public Error {
 public:
  using Error::Error;
};

// Locality errors: a product or a grafting was attempted on dependent data.
class LocalityViolation : public Error {
 public:
  using Error::Error;
};
class NotProperlyDecorated : public Error {
 public:
  using Error::Error;
};

// Algebra errors.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};
class VariableMismatch : public Error {
 public:
  using Error::Error;
};
class NotDivisible : public Error {
 public:
  using Error::Error;
};
class SingularGram : public Error {
 public:
  using Error::Error;
};
class InsufficientTruncation : public Error {
 public:
  using Error::Error;
};
class TruncationInstability : public Error {
 public:
  using Error::Error;
};

// Numeric errors.
class DomainError : public Error {
 public:
  using Error::Error;
};
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace kreimer
