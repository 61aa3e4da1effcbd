#pragma once

#include <stdexcept>
#include <string>

namespace wittforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Operands live in incompatible scalar contexts (different radicands or symbol sets).
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class MissingSymbol : public Error {
 public:
  explicit MissingSymbol(const std::string& name)
      : Error("no value assigned to symbol '" + name + "'"), symbol(name) {}
  std::string symbol;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input document does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedPresentation : public Error {
 public:
  using Error::Error;
};

/// The adaptive degree bound hit its ceiling; the outcome is inconclusive.
class ClosureFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace wittforge
