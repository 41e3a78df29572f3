#pragma once

#include <stdexcept>
#include <string>

namespace gka {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A degree was queried outside the finite window an object is known on.
class WindowViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Matrix or vector dimensions do not fit together.
class ShapeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Idempotent labels of two spaces do not refer to the same idempotent set.
class LabelError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A request exceeds a fixed implementation capacity.
class CapacityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A nonzero product lands in a degree the grading cannot hold.
class GradingViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input; the message carries the JSON path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An invariant that the mathematics guarantees was found broken.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gka
