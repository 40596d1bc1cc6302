#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smi {

/// Malformed or unsupported input: bad numbers, unknown variables, weight
/// forms the reductions cannot encode.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in a problem file, with 1-based position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The problem is well formed but outside what the engine handles
/// (a primal graph with a cycle).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smi
