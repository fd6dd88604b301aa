#pragma once

#include <stdexcept>
#include <string>

namespace nilqp {

/// Raised for malformed or mathematically invalid user input (bad files,
/// Jacobi failures, unknown catalog keys). The CLI maps it to exit code 1.
class InputError : public std::runtime_error {
 public:
  InputError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// An internal consistency check failed. Exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  InvariantViolation(std::string kind, const std::string& message)
      : std::logic_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

}  // namespace nilqp
