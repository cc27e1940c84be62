#pragma once

#include <stdexcept>
#include <string>

namespace kcmedian {

/// Malformed or inconsistent input data (empty elements, mixed dimensions,
/// non-finite coordinates).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace kcmedian
