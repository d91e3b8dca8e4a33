#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search or enumeration would exceed its configured budget.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class UnknownObject : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class MiddleMismatch : public Error {
 public:
  using Error::Error;
};

class NotLocallyCartesian : public Error {
 public:
  using Error::Error;
};

class NonFunctorialAction : public Error {
 public:
  using Error::Error;
};

class IncoherentDiagram : public Error {
 public:
  using Error::Error;
};

class UnknownTheorem : public Error {
 public:
  using Error::Error;
};

/// Wrong shape of input (e.g. a base that is not the interval).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Positioned diagnostics raised by the `.fincat` reader.
class ParseError : public Error {
 public:
  ParseError(const std::string& kind, const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + kind + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : ParseError("syntax error", msg, line, column) {}
};

class UnresolvedReference : public ParseError {
 public:
  UnresolvedReference(const std::string& name, int line, int column)
      : ParseError("unresolved reference", name, line, column), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ValidationError : public ParseError {
 public:
  ValidationError(const std::string& msg, int line, int column)
      : ParseError("validation error", msg, line, column) {}
};

class ClosureExceeded : public Error {
 public:
  explicit ClosureExceeded(std::size_t max, int line = 0, int column = 0)
      : Error((line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " : std::string()) +
              "generator closure exceeded max=" + std::to_string(max) + " morphisms"),
        max_(max),
        line_(line),
        column_(column) {}
  std::size_t max() const noexcept { return max_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::size_t max_;
  int line_;
  int column_;
};

}  // namespace fcat
