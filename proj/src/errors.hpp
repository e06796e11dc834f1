#pragma once

#include <stdexcept>

namespace gpr {

/// An iterative routine failed to reach its accuracy target or produced
/// non-finite values.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File could not be read or written; the message carries the path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gpr
