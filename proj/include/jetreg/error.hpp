#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jetreg {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotOrthogonal,
  SingularMatrix,
  AngleAtCut,
  UnsupportedOrder,
  GridTooCoarse,
  GridMismatch,
  ComponentMismatch,
  NonMonotoneProfile,
  UnsupportedProfile,
  MalformedFile,
  NonUniformGrid,
  NoConvergence,
  SingularJacobian,
  AllStartsFailed,
  SolverFailure,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace jetreg
