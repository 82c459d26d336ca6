#pragma once

#include <stdexcept>
#include <string>

namespace mbie {

// Error categories aligned with the CLI exit codes:
// validation -> 2, numerical -> 3, i/o -> 4.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace mbie
