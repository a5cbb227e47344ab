#pragma once

#include <stdexcept>
#include <string>

namespace midx {

enum class ErrorCode {
  InvalidParams,
  UnsupportedFamily,
  OutOfRange,
  DuplicateDegree,
  DegreeOutOfRange,
  RemainderNonzero,
  DegenerateLeadingCoeff,
  NoConvergence,
  PoleHit,
  DenominatorZero,
  NonPositiveWeight,
  IdentityViolated,
  InterlacingViolated,
  WeightFailure,
  NonConvergentQuadrature,
  TypeIIRejected,
  NotAdmissible,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DuplicateDegree: return "DuplicateDegree";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::RemainderNonzero: return "RemainderNonzero";
    case ErrorCode::DegenerateLeadingCoeff: return "DegenerateLeadingCoeff";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::DenominatorZero: return "DenominatorZero";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::IdentityViolated: return "IdentityViolated";
    case ErrorCode::InterlacingViolated: return "InterlacingViolated";
    case ErrorCode::WeightFailure: return "WeightFailure";
    case ErrorCode::NonConvergentQuadrature: return "NonConvergentQuadrature";
    case ErrorCode::TypeIIRejected: return "TypeIIRejected";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace midx
