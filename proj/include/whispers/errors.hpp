#pragma once

#include <stdexcept>
#include <string>

namespace whispers {

// Bad user input (malformed files, out-of-range parameters). CLI exit 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured cap (search or solver space too large). CLI exit 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative solver stopped above tolerance. CLI exit 4 under --strict.
class UnconvergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace whispers
