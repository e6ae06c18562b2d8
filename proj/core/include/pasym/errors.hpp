#pragma once

#include <stdexcept>
#include <string>

namespace pasym {

/// Argument outside the mathematical domain of an operation (t <= 0, q < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical guard tripped: boundary smallness, non-finite samples, moment tail.
class GuardBreach : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Picard iteration failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a documented precondition (missing auxiliary state, grid mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed or unknown experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pasym
