#include "hbspace/error.hpp"

namespace hbspace {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kRootNonConvergence: return "root-non-convergence";
    case ErrorCode::kNotSchurSymbol: return "not-a-schur-symbol";
    case ErrorCode::kExtremeSymbol: return "extreme-symbol";
    case ErrorCode::kNotInUnitBall: return "not-in-unit-ball";
    case ErrorCode::kNotInH2: return "not-in-H2";
    case ErrorCode::kPoleOnBoundary: return "pole-at-boundary";
    case ErrorCode::kHypothesisViolation: return "hypothesis-violation";
    case ErrorCode::kNotAbsolutelyContinuous: return "not-absolutely-continuous";
    case ErrorCode::kKernelLimitDoesNotExist: return "kernel-limit-does-not-exist";
    case ErrorCode::kNotInHbAtTruncation: return "not-in-Hb-at-this-truncation";
    case ErrorCode::kFormulaUndefined: return "formula-undefined";
    case ErrorCode::kUnsupportedSymbol: return "unsupported-symbol";
    case ErrorCode::kAmbiguousBoundaryZero: return "ambiguous-boundary-zero";
    case ErrorCode::kNoAdmissibleLambda: return "no-admissible-lambda";
    case ErrorCode::kNumerical: return "numerical-failure";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what, double residual)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
      code_(code),
      residual_(residual) {}

bool Error::is_input_error() const noexcept {
  switch (code_) {
    case ErrorCode::kRootNonConvergence:
    case ErrorCode::kNotInHbAtTruncation:
    case ErrorCode::kNumerical:
      return false;
    default:
      return true;
  }
}

}  // namespace hbspace
