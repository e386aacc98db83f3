#pragma once

#include <stdexcept>
#include <string>

namespace blockade_anyon {

// Bad argument values (ranges, lengths).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Values outside the domain of an operation: illegal basis states, mixed sectors.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// An algebraic structure did not come out as required (projector not idempotent,
// commutant of the wrong dimension, channel identification impossible).
class StructureError : public std::runtime_error {
 public:
  StructureError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_ = 0.0;
};

// A dense computation would exceed the configured size ceiling.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_ = 0.0;
};

// The Rydberg/anyon operator dictionary failed to close.
class DictionaryError : public std::runtime_error {
 public:
  DictionaryError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_ = 0.0;
};

}  // namespace blockade_anyon
