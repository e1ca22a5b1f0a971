#pragma once

#include <stdexcept>
#include <string>

namespace ccr {

// Malformed or unresolvable input (unknown ids, parse failures, bad files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its domain (non-admissible tuple,
// ineligible complex, median at infinity, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A self-check failed: two independent computations disagree, a count did
// not stabilise, or a verified theorem consequence does not hold. Always a
// bug or a corrupted recorded oracle.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ccr
