#include "nsho/types.hpp"

namespace nsho {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleAtTau: return "PoleAtTau";
    case ErrorCode::OutsideSemiModule: return "OutsideSemiModule";
    case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorCode::RegimeUndefined: return "RegimeUndefined";
    case ErrorCode::NonPositiveTime: return "NonPositiveTime";
    case ErrorCode::SpectralBoundViolated: return "SpectralBoundViolated";
    case ErrorCode::OverflowRisk: return "OverflowRisk";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SingularityTooStrong: return "SingularityTooStrong";
    case ErrorCode::ContractionNotSatisfied: return "ContractionNotSatisfied";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::RecurrenceOverflow: return "RecurrenceOverflow";
    case ErrorCode::InsufficientTrustedEigenvalues: return "InsufficientTrustedEigenvalues";
    case ErrorCode::TrustedWindowEmpty: return "TrustedWindowEmpty";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "UnknownError";
}

}  // namespace nsho
