#pragma once

#include <stdexcept>
#include <string>

namespace autoscore {

// Bad input, schema, or configuration. The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure at run time (non-convergence, degenerate resamples).
// The CLI maps this to exit code 2.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace autoscore
