#ifndef HYPERSET_ERRORS_HPP
#define HYPERSET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperset {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A construction would exceed the configured node budget.
class LimitError : public Error {
 public:
  explicit LimitError(const std::string& what) : Error(what) {}
};

/// A set does not decode as the requested value (not an ordinal, not a pair, ...).
class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& what) : Error(what) {}
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(what) {}
};

/// Syntax error with source position (1-based line and column).
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col),
        message_(msg) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int col_;
  std::string message_;
};

}  // namespace hyperset

#endif  // HYPERSET_ERRORS_HPP
