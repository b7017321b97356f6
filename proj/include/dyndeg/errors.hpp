#pragma once

#include <stdexcept>
#include <string>

namespace dyndeg {

// input passed validation but a verification step failed; CLI exit code 2
class EligibilityError : public std::runtime_error {
 public:
  explicit EligibilityError(const std::string& what) : std::runtime_error(what) {}
};

// a configured search or combinatorial budget ran out; CLI exit code 3
class BoundExhausted : public std::runtime_error {
 public:
  explicit BoundExhausted(const std::string& what) : std::runtime_error(what) {}
};

// the working precision cap was reached before certification; CLI exit code 3
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dyndeg
