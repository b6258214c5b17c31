#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbidx {

// Machine-readable failure codes. Reports carry the string form.
enum class ErrorCode {
  OrderExceeded,
  NotOrthogonal,
  InconsistentAction,
  NotFaithful,
  NotSimplicial,
  RegularizationFailed,
  RequiresRegular,
  NotManifold,
  EmptyBoundary,
  EvalError,
  NewtonDivergence,
  ZeroOnBoundary,
  DegenerateZero,
  FieldVanishesOnCircle,
  FieldVanishesOnBoundary,
  NotGeneric,
  UnsupportedDimension,
  UnsupportedBoundary,
  BoundaryZeroDegenerate,
  SupportTooWide,
  MismatchDetected,
  InertiaMismatch,
  TangencyViolation,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace orbidx
