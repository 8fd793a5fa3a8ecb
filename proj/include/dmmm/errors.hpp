#pragma once

#include <stdexcept>
#include <string>

namespace dmmm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input could not be read or is not well-formed JSON/CSV.
class ParseError : public Error {
 public:
  using Error::Error;
};

enum class ValidationCode {
  DuplicateId,
  DanglingUserReference,
  NonPositiveDuration,
  NonPositiveWeight,
  NonPositivePriority,
  NonPositiveRating,
  EmptyUserType,
  EmptyCriteria,
  EmptyColumns,
  InvalidSpeedFactor,
  UnknownUserType,
  UnknownKey,
  MissingField,
  WrongType,
  UnknownAlgorithm,
  NegativeAmount,
  NegativeBucket,
  DuplicateUsageKey,
  UnknownCustomer,
  ThresholdOrder,
  InvalidThreshold,
  InvalidRule,
  InvalidArgument,
  Overflow,
};

const char* to_string(ValidationCode code);

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  ValidationError(ValidationCode code, const std::string& detail)
      : Error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ValidationCode code() const noexcept { return code_; }

 private:
  ValidationCode code_;
};

/// A scheduling run could not complete (no resources, or a binding policy
/// broke its contract with the engine).
class SchedulingError : public Error {
 public:
  using Error::Error;
};

}  // namespace dmmm
