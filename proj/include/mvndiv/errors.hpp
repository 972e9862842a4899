#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvndiv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed version string or date.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Bad input data: malformed records, duplicates, unresolved references, I/O.
class DataError : public Error {
public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based input line, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Operation applied outside its domain (e.g. `next` on an external stub).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Unknown coordinate or library id.
class LookupError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration value.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Iterative score computation failed to reach the requested tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double residual, std::size_t iterations, bool diverged)
      : Error(what), residual_(residual), iterations_(iterations), diverged_(diverged) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }
  /// True when the residual was still growing, i.e. the fixed point does not exist.
  bool diverged() const noexcept { return diverged_; }

private:
  double residual_;
  std::size_t iterations_;
  bool diverged_;
};

}  // namespace mvndiv
