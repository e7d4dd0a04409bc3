#pragma once

#include <stdexcept>
#include <string>

namespace lppl {

// Base class for all toolkit errors so callers can catch the whole family.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file: bad header, bad row, non-monotone dates.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input carrying an unusable value (non-finite, <= 0).
class DataError : public Error {
 public:
  using Error::Error;
};

// Missing calendar days encountered while the gap policy forbids filling.
class GapError : public Error {
 public:
  using Error::Error;
};

// Index or length outside the valid range of a series or search space.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Function argument outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Window length does not match the model's expected sample count.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Regression basis is rank-deficient or numerically ill-conditioned.
class DegenerateBasisError : public Error {
 public:
  using Error::Error;
};

// No fit candidate satisfied the constraint set.
class NoFeasibleFitError : public Error {
 public:
  using Error::Error;
};

// Fewer than three extrema of a kind: the trend test is undefined.
class InsufficientExtremaError : public Error {
 public:
  using Error::Error;
};

// Prediction horizon does not reach past the window start offset.
class InvalidWindowError : public Error {
 public:
  using Error::Error;
};

// Closed-form path is singular for this exponent (delta = 2).
class SingularExponentError : public Error {
 public:
  using Error::Error;
};

// Input list violates a required sort order.
class OrderError : public Error {
 public:
  using Error::Error;
};

// Series too short for the configured warm-up length.
class InsufficientHistoryError : public Error {
 public:
  using Error::Error;
};

}  // namespace lppl
