#pragma once

#include <stdexcept>
#include <string>

namespace rolab {

/// Raised when an input violates a documented invariant. The message names
/// the offending field so it can be surfaced verbatim by the CLI.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rolab
