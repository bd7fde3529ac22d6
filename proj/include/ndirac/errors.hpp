#pragma once

#include <stdexcept>
#include <string>

namespace ndirac {

// Invalid user configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative or adaptive method did not reach its tolerance (exit code 3).
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked identity failed beyond its contracted tolerance (exit code 4).
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ndirac
