#pragma once

#include <stdexcept>
#include <string>

namespace lyap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the input does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A decomposition broke down or produced inconsistent numbers.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lyap
