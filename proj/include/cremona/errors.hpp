#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cremona {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public FieldError {
 public:
  DivisionByZero() : FieldError("division by zero") {}
};

class FieldMismatch : public FieldError {
 public:
  FieldMismatch() : FieldError("coefficient field mismatch") {}
};

/// A rational coefficient cannot be reduced modulo the requested prime.
class BadPrime : public FieldError {
 public:
  using FieldError::FieldError;
};

/// Operands with different variable counts, point lengths or map dimensions.
class ArityError : public Error {
 public:
  using Error::Error;
};

class HomogeneityError : public Error {
 public:
  using Error::Error;
};

/// Raised when a quotient is requested but the divisor does not divide exactly.
class NotDivisible : public Error {
 public:
  NotDivisible() : Error("polynomial division is not exact") {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// All components of a map vanish at the evaluation point.
class BasePointError : public Error {
 public:
  BasePointError() : Error("point lies in the base locus") {}
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
};

class InverseUnavailable : public Error {
 public:
  using Error::Error;
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (bad parameters, failed invariants).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A reduction mod p leaves no usable point: base points or zero Jacobian everywhere.
class DegenerateReduction : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedRewrite : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cremona
