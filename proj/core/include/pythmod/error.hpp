#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pythmod {

enum class ErrorCode {
  InvalidArgument,
  ModulusMismatch,
  NotInvertible,
  UnitRequired,
  DenominatorNotUnit,
  InadmissibleParameter,
  InvalidPoint,
  InvalidSolution,
  TooLarge,
  HypothesisViolated,
  NotResidue,
  SmallPrime,
  RangeViolation,
  Overflow,
};

std::string_view to_string(ErrorCode code) noexcept;

// All precondition failures surface as this exception; callers that need to
// branch on the failure kind inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pythmod
