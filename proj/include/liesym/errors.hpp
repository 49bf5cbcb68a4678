#pragma once

#include <stdexcept>
#include <string>

namespace liesym {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by an expression that is identically zero.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Chain rule through a formal function whose arguments are not plain symbols.
class UnsupportedComposition : public Error {
 public:
  using Error::Error;
};

class NonPolynomial : public Error {
 public:
  using Error::Error;
};

/// A jet coordinate beyond the configured order bound was requested.
class OrderLimit : public Error {
 public:
  using Error::Error;
};

/// Reduction modulo a solved form did not reach a fixpoint.
class IllPosedSolvedForm : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class NotSubalgebra : public Error {
 public:
  NotSubalgebra(std::string what, std::size_t i, std::size_t j)
      : Error(std::move(what)), i_(i), j_(j) {}
  std::size_t first() const { return i_; }
  std::size_t second() const { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

/// Characteristic polynomial has a factor without rational roots.
class UnsupportedSpectrum : public Error {
 public:
  using Error::Error;
};

class UnsupportedGeneratorShape : public Error {
 public:
  using Error::Error;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace liesym
