#pragma once

#include <stdexcept>
#include <string>

namespace flatheat {

// Bad user input: unknown material, malformed scenario, violated preconditions
// on configuration values. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Quadrature budget exhausted, non-finite simulation state and similar.
// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flatheat
