#pragma once

#include <stdexcept>
#include <string>

namespace bvsmed {

/// Bad user input: malformed config, inconsistent dimensions, contract violations.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: Cholesky breakdown, non-finite quantities where finiteness is required.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem / parse failures.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bvsmed
