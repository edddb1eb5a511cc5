#pragma once

#include <stdexcept>
#include <string>

namespace factexp {

// Input violates an operation's precondition (bad base, non-prime, p | m, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A result or intermediate does not fit the 64-bit representation.
class OverflowError : public DomainError {
 public:
  explicit OverflowError(const std::string& what) : DomainError(what) {}
};

// A mathematical guarantee was observed to fail. Never expected in practice.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace factexp
