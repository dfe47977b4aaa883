#pragma once

#include <stdexcept>
#include <string>

namespace lambdacf {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input or a failed mathematical hypothesis (class number, assumption
// checks, domain restrictions). Maps to exit code 2 in the CLI.
struct precondition_error : error {
  using error::error;
};

// A broken internal invariant: non-integral aggregate, unit construction
// failure, oracle mismatch. Always a bug, never bad input. Exit code 4.
struct internal_error : error {
  using error::error;
};

}  // namespace lambdacf
