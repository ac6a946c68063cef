#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treeauto {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on trees with different alphabets.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// A named generator does not exist in the generating set.
class UnknownGenerator : public Error {
 public:
  explicit UnknownGenerator(const std::string& name)
      : Error("unknown generator '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// An operation's precondition does not hold for its inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed machine text; carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A vertex or word budget was exhausted before the computation finished.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace treeauto
