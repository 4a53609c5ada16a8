#pragma once

#include <stdexcept>
#include <string>

namespace peakspread {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or contract-violating input (bad schedules, maps, configs, CLI
// arguments). Maps to exit code 2 in the command-line tool.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Textual input that failed to parse. Carries the 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A query outside the domain an object is defined on.
class DomainError : public ValidationError {
 public:
  explicit DomainError(const std::string& what) : ValidationError(what) {}
};

// Fixed-point arithmetic left the representable range.
class ArithmeticError : public Error {
 public:
  explicit ArithmeticError(const std::string& what) : Error(what) {}
};

// A well-formed computation with no feasible answer (e.g. a flow ratio no
// zero-truncated Gaussian can reproduce). Maps to exit code 3.
class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(what) {}
};

// Filesystem-level failure. Maps to exit code 1.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace peakspread
