#pragma once

#include <stdexcept>
#include <string>

namespace ribbonzeta {

// Stable machine-readable error codes. The CLI prints these verbatim on
// failure, so the names are part of the external interface.
enum class ErrorCode {
  NotInvolution,
  FixedPointInTwin,
  Disconnected,
  PermutationInvalid,
  InvalidEuler,
  InadmissibleType,
  LoopContraction,
  NonPositiveScale,
  NonPositiveLength,
  BudgetExceeded,
  NullHomotopic,
  NotTrivalent,
  NotIrreducible,
  NoConvergence,
  DegreeOverflow,
  NotRational,
  InsufficientData,
  EmptyCell,
  ZeroDimensional,
  RankDeficient,
  Empty,
  NonPositiveWeight,
  LipschitzViolation,
  ParseError,
  InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::FixedPointInTwin: return "FixedPointInTwin";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::PermutationInvalid: return "PermutationInvalid";
    case ErrorCode::InvalidEuler: return "InvalidEuler";
    case ErrorCode::InadmissibleType: return "InadmissibleType";
    case ErrorCode::LoopContraction: return "LoopContraction";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NullHomotopic: return "NullHomotopic";
    case ErrorCode::NotTrivalent: return "NotTrivalent";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::EmptyCell: return "EmptyCell";
    case ErrorCode::ZeroDimensional: return "ZeroDimensional";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::LipschitzViolation: return "LipschitzViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace ribbonzeta
