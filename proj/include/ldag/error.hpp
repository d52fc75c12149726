#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldag {

// Base of every error the library throws. code() is a stable identifier
// that the CLI surfaces in its machine-readable error line.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

class CycleError : public Error {
 public:
  // cycle holds the node sequence with the first node repeated at the end.
  explicit CycleError(std::vector<int> cycle);

  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

class ValueOutOfRange : public Error {
 public:
  explicit ValueOutOfRange(const std::string& what) : Error("value_out_of_range", what) {}
};

class KappaOutOfRange : public Error {
 public:
  explicit KappaOutOfRange(double kappa);
};

class ContextTooLarge : public Error {
 public:
  explicit ContextTooLarge(const std::string& what) : Error("context_too_large", what) {}
};

class StateSpaceTooLarge : public Error {
 public:
  explicit StateSpaceTooLarge(const std::string& what) : Error("state_space_too_large", what) {}
};

class SupportError : public Error {
 public:
  explicit SupportError(const std::string& what) : Error("support_error", what) {}
};

class NoLegalMove : public Error {
 public:
  NoLegalMove() : Error("no_legal_move", "graph has no legal single-edge move") {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error("invariant_violation", what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ldag
