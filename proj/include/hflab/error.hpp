#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hflab {

// Base class for every error the library raises. The CLI maps all of these
// to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size guard refused an operation that would blow up (powerset, product,
// stage materialization, enumeration caps).
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

// Ackermann code does not fit in 64 bits.
class CodeOverflow : public Error {
 public:
  using Error::Error;
};

class NotAFunction : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Evaluation problems: unbound variable, uninterpreted constant, bad input.
class EvalError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Relativization would capture the bounding term.
class CaptureError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hflab
