#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbc {

// Exit-code classes used by the CLI: 1 validation, 2 I/O, 3 internal invariant.
enum class ErrorKind { validation = 1, io = 2, invariant = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

/// Argument outside the mathematical domain of a model function.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Requested output power cannot be delivered at any positive distance.
class UnreachablePowerError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Transmitter mounted higher than its slant reach.
class HeightExceedsReachError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Charging-profile denominator vanishes at the requested energy.
class FitSingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Random point generation exceeded its retry budget.
class GenerationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorKind::invariant, what) {}
};

}  // namespace rbc
