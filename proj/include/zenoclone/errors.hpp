#pragma once

#include <stdexcept>
#include <string>

namespace zenoclone {

// Invalid user-supplied configuration (bad key, out-of-range value, ...).
// The CLI maps this to exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A runtime invariant of the numerics was violated (norm drift, trace loss,
// negative eigenvalue beyond tolerance, ...). The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Failure to read or write a file. The CLI maps this to exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zenoclone
