#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxent {

enum class ErrorCode {
  InvalidArgument,
  SpaceMismatch,
  ZeroProbabilityConditioning,
  Infeasible,
  NonConvergence,
  VerificationFailed,
  ProbeOutsideConstraintSet,
  InvalidShift,
  YNotExpressibleInNewSpace,
  IrrationalWeights,
  DenominatorOverflow,
  ZNotDeterminingV,
  DegenerateCell,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every error thrown by the library. `code()` identifies the failure
/// class so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace maxent
