#pragma once

#include <stdexcept>
#include <string>

namespace skh {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed token in PD text.
class SyntaxError : public Error {
 public:
  using Error::Error;
};

// Well-formed PD text describing an impossible diagram.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class FaceCommutationError : public Error {
 public:
  using Error::Error;
};

class ComplexInvalid : public Error {
 public:
  using Error::Error;
};

class NotAChainMap : public Error {
 public:
  using Error::Error;
};

class InconsistentBasis : public Error {
 public:
  using Error::Error;
};

}  // namespace skh
