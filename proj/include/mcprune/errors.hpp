#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcprune {

// Every failure raised by the library derives from Error so that callers
// (the CLI in particular) can map them to a non-zero exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input is structurally valid but the quantity asked for is undefined
/// (edgeless graph for eigencentrality, a single class for balancing, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  FitError(std::size_t stage, const std::string& what)
      : Error("stage " + std::to_string(stage) + ": " + what), stage_(stage) {}
  std::size_t stage() const noexcept { return stage_; }

 private:
  std::size_t stage_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when the exact solver exceeds its time limit. Carries the size of
/// the largest clique seen so far; there is deliberately no partial result.
class TimeoutError : public Error {
 public:
  explicit TimeoutError(std::size_t best_lower_bound)
      : Error("time limit exceeded (best clique so far: " +
              std::to_string(best_lower_bound) + ")"),
        best_lower_bound_(best_lower_bound) {}
  std::size_t best_lower_bound() const noexcept { return best_lower_bound_; }

 private:
  std::size_t best_lower_bound_;
};

}  // namespace mcprune
