#pragma once

#include <stdexcept>
#include <string>

namespace relfree {

// Mismatched engine configuration: different moduli, different ambient
// variable counts, or an unusable modulus.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed argument to an individual operation.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured resource budget was exceeded. Computations never truncate
// silently; they throw this instead.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Surface-syntax error, with 1-based position information.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace relfree
