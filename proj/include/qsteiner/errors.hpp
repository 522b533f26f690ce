#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsteiner {

/// Malformed argument: bad weight, vertex out of range, parameter outside its domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The terminals do not lie in one connected component.
class NoSteinerTree : public std::runtime_error {
 public:
  NoSteinerTree() : std::runtime_error("no Steiner tree: terminals are disconnected") {}
  using std::runtime_error::runtime_error;
};

/// An exhaustive routine was asked to enumerate more than its size guard allows.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qsteiner
