#include "orbidx/errors.hpp"

namespace orbidx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::InconsistentAction: return "InconsistentAction";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::RegularizationFailed: return "RegularizationFailed";
    case ErrorCode::RequiresRegular: return "RequiresRegular";
    case ErrorCode::NotManifold: return "NotManifold";
    case ErrorCode::EmptyBoundary: return "EmptyBoundary";
    case ErrorCode::EvalError: return "EvalError";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::ZeroOnBoundary: return "ZeroOnBoundary";
    case ErrorCode::DegenerateZero: return "DegenerateZero";
    case ErrorCode::FieldVanishesOnCircle: return "FieldVanishesOnCircle";
    case ErrorCode::FieldVanishesOnBoundary: return "FieldVanishesOnBoundary";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::UnsupportedBoundary: return "UnsupportedBoundary";
    case ErrorCode::BoundaryZeroDegenerate: return "BoundaryZeroDegenerate";
    case ErrorCode::SupportTooWide: return "SupportTooWide";
    case ErrorCode::MismatchDetected: return "MismatchDetected";
    case ErrorCode::InertiaMismatch: return "InertiaMismatch";
    case ErrorCode::TangencyViolation: return "TangencyViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace orbidx
