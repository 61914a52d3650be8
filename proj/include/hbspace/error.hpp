#pragma once

#include <stdexcept>
#include <string>

namespace hbspace {

enum class ErrorCode {
  kParse,
  kInvalidArgument,
  kRootNonConvergence,
  kNotSchurSymbol,
  kExtremeSymbol,
  kNotInUnitBall,
  kNotInH2,
  kPoleOnBoundary,
  kHypothesisViolation,
  kNotAbsolutelyContinuous,
  kKernelLimitDoesNotExist,
  kNotInHbAtTruncation,
  kFormulaUndefined,
  kUnsupportedSymbol,
  kAmbiguousBoundaryZero,
  kNoAdmissibleLambda,
  kNumerical,
};

const char* error_code_name(ErrorCode code) noexcept;

// All library failures are reported through this type. `residual` carries the
// offending numerical quantity when one exists (NaN otherwise).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double residual = kNoResidual);

  ErrorCode code() const noexcept { return code_; }
  double residual() const noexcept { return residual_; }
  bool is_input_error() const noexcept;

  static constexpr double kNoResidual = __builtin_nan("");

 private:
  ErrorCode code_;
  double residual_;
};

}  // namespace hbspace
