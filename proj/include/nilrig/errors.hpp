#pragma once

#include <stdexcept>
#include <string>

namespace nilrig {

/// Machine-parsable error codes. The CLI maps these to process exit codes;
/// library users can switch on code() instead of parsing messages.
enum class ErrorCode {
  // algebra validation
  JacobiViolation,
  NotNilpotent,
  NotStrongMalcevOrder,
  NotCentral,
  DegreeOutOfRange,
  // lattice construction / certification
  NotStronglyBased,
  ClosureFailure,
  RescaleBoundExceeded,
  GradingViolation,
  ReduciblePolynomial,
  DegreeMismatch,
  RationalInput,
  CertificateSpotCheckFailed,
  NotTriangular,
  // solver
  GridMismatch,
  Resonance,
  TailTooFat,
  FiberMeanNonzero,
  NotFiberConstant,
  // infrastructure
  ParseError,
  IoError,
  Usage,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string stage, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + " [" + stage + "]: " + message),
        code_(code),
        stage_(std::move(stage)) {}

  ErrorCode code() const { return code_; }
  /// Pipeline stage that failed (e.g. "validate_algebra", "fiberwise_transfer level 2").
  const std::string& stage() const { return stage_; }

 private:
  ErrorCode code_;
  std::string stage_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::JacobiViolation: return "JacobiViolation";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotStrongMalcevOrder: return "NotStrongMalcevOrder";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NotStronglyBased: return "NotStronglyBased";
    case ErrorCode::ClosureFailure: return "ClosureFailure";
    case ErrorCode::RescaleBoundExceeded: return "RescaleBoundExceeded";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::RationalInput: return "RationalInput";
    case ErrorCode::CertificateSpotCheckFailed: return "CertificateSpotCheckFailed";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::Resonance: return "Resonance";
    case ErrorCode::TailTooFat: return "TailTooFat";
    case ErrorCode::FiberMeanNonzero: return "FiberMeanNonzero";
    case ErrorCode::NotFiberConstant: return "NotFiberConstant";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Usage: return "Usage";
  }
  return "UnknownError";
}

/// Exit-code mapping used by the CLI: 0 success, 2 validation failure,
/// 3 resonance, 4 tail bound, 5 fiber-constancy, 64 usage.
inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Resonance: return 3;
    case ErrorCode::TailTooFat: return 4;
    case ErrorCode::FiberMeanNonzero:
    case ErrorCode::NotFiberConstant: return 5;
    case ErrorCode::Usage: return 64;
    case ErrorCode::IoError: return 66;  // cf. sysexits EX_NOINPUT
    default: return 2;
  }
}

}  // namespace nilrig
