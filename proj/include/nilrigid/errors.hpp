#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilrigid {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct FieldError : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct NotLieAlgebra : Error {
  using Error::Error;
};

/// Input does not satisfy the variety equations required by the operation.
struct NotInVariety : Error {
  using Error::Error;
};

struct NotADerivation : Error {
  using Error::Error;
};

/// A computation hit a configured cap. Never reported as a wrong answer.
struct ResourceLimit : Error {
  using Error::Error;
};

struct UnknownAlgebra : Error {
  using Error::Error;
};

struct MissingParameter : Error {
  using Error::Error;
};

struct ExternalDataRequired : Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownLetter, LetterOutOfRange, UnresolvedParameter, Nonlinear, Schema };

  ParseError(Kind kind, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                   : what),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nilrigid
