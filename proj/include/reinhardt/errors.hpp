#ifndef REINHARDT_ERRORS_HPP_
#define REINHARDT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace reinhardt {

/// Raised when a caller violates an operation's precondition (bad parameters,
/// non-finite coordinates, malformed descriptors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical sampler cannot produce the requested evidence,
/// e.g. a boundary sampler that finds no zero crossing.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reinhardt

#endif  // REINHARDT_ERRORS_HPP_
