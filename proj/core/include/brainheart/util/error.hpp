#pragma once

#include <stdexcept>
#include <string>

namespace bh {

/// Invalid parameters, configuration or preconditions supplied by the caller.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The data itself is unusable: corrupt files, degenerate signals, failed fits.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bh
