#include "pythmod/error.hpp"

namespace pythmod {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::UnitRequired: return "UnitRequired";
    case ErrorCode::DenominatorNotUnit: return "DenominatorNotUnit";
    case ErrorCode::InadmissibleParameter: return "InadmissibleParameter";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::InvalidSolution: return "InvalidSolution";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotResidue: return "NotResidue";
    case ErrorCode::SmallPrime: return "SmallPrime";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace pythmod
