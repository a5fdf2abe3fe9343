#pragma once

#include <stdexcept>
#include <string>

namespace graphword {

// Error categories map to process exit codes in the CLI:
//   config_error -> 2, io_error -> 3, numeric_error -> 4, anything else -> 1.

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Contract violations inside the library (bad shapes, empty inputs, unknown
// entities). These indicate caller bugs rather than bad user input.
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace graphword
