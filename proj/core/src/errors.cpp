#include "maxent/errors.hpp"

namespace maxent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::ZeroProbabilityConditioning: return "ZeroProbabilityConditioning";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::ProbeOutsideConstraintSet: return "ProbeOutsideConstraintSet";
    case ErrorCode::InvalidShift: return "InvalidShift";
    case ErrorCode::YNotExpressibleInNewSpace: return "YNotExpressibleInNewSpace";
    case ErrorCode::IrrationalWeights: return "IrrationalWeights";
    case ErrorCode::DenominatorOverflow: return "DenominatorOverflow";
    case ErrorCode::ZNotDeterminingV: return "ZNotDeterminingV";
    case ErrorCode::DegenerateCell: return "DegenerateCell";
  }
  return "Unknown";
}

}  // namespace maxent
