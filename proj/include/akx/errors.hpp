#pragma once

#include <stdexcept>
#include <string>

namespace akx {

// Surgery operations validate every precondition; `violated` names the one
// that failed so callers can branch on it.
struct PreconditionError : std::invalid_argument {
  std::string violated;
  explicit PreconditionError(const std::string& which)
      : std::invalid_argument("precondition violated: " + which), violated(which) {}
};

}  // namespace akx
