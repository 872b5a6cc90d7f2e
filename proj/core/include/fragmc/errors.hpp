#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fragmc {

/// Malformed concrete syntax. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                           message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Invalid Kripke structure or model file content.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula was handed to an engine or transformation outside its fragment.
class FragmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed reduction source object (game, circuit, CNF).
class SourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fragmc
