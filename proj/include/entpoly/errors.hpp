#pragma once

#include <stdexcept>
#include <string>

namespace entpoly {

/// Bad dimensions, non-density input, parameters out of range, malformed files.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The requested measure has no implementation for this kind of state
/// (e.g. concurrence of a mixed network state, which needs a convex roof).
struct unsupported_measure : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace entpoly
