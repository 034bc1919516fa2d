#pragma once

#include <stdexcept>
#include <string>

namespace harmext {

// Coefficients or metric too close to singular to be meaningful.
class DegenerateError : public std::domain_error {
 public:
  explicit DegenerateError(const std::string& what) : std::domain_error(what) {}
};

// Input lies outside the domain where an operation is defined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Accessing the finite value of a point at infinity.
class InfinitePointError : public std::domain_error {
 public:
  explicit InfinitePointError(const std::string& what) : std::domain_error(what) {}
};

class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace harmext
