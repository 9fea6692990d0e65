#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blotto {

// Malformed input document (edge list, allocation file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A node ended up with no neighbors, so random-walk rows are undefined.
class DegenerateGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance exceeds a hard size gate.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iteration budget exhausted before reaching the requested power or tolerance.
class IterationCapError : public std::runtime_error {
 public:
  IterationCapError(const std::string& what, std::size_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"),
        cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

// Numeric routine stopped without converging; carries the last residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace blotto
