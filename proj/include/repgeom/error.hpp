#pragma once

#include <stdexcept>
#include <string>

namespace repgeom {

// Input is well-formed I/O-wise but violates a format or data invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations (shapes, ranges, arguments) use std::invalid_argument
// and std::out_of_range; numerical failures use NumericalError.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace repgeom
