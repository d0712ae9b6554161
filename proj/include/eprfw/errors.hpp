#pragma once

#include <stdexcept>
#include <string>

namespace eprfw {

/// Input outside the physical domain (on the string axis, alpha > 1, ...).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed call arguments (zero step count, bad sweep spec, ...).
class ArgumentError : public std::invalid_argument {
public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix does not have the structure an operation relies on.
class StructuralError : public std::runtime_error {
public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eprfw
