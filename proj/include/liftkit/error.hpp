#pragma once

#include <stdexcept>
#include <string>

namespace liftkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class InputError : public Error {
 public:
  InputError(const std::string& what, int line = 0, int col = 0)
      : Error(format(what, line, col)), line_(line), col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  static std::string format(const std::string& what, int line, int col) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what;
  }
  int line_;
  int col_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition does not hold for its input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace liftkit
