// Exception hierarchy shared by every pmodal module.

#ifndef PMODAL_ERRORS_HPP_
#define PMODAL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmodal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ArityError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

/// Probability operators nested deeper than two, or a written level that
/// contradicts its position.
class DepthError : public Error {
 public:
  using Error::Error;
};

/// Box/Dia and probability operators in one formula.
class MixedModalityError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class OpenFormulaError : public EvalError {
 public:
  using EvalError::EvalError;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmodal

#endif  // PMODAL_ERRORS_HPP_
