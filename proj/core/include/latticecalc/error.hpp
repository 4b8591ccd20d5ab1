#pragma once

#include <stdexcept>
#include <string>

namespace latcalc {

// Malformed input: bad descriptors, dimension mismatches, invalid parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request exceeds the size limits of an exhaustive search.
class ScaleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace latcalc
