#pragma once

#include <stdexcept>
#include <string>

namespace ptc {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  ZeroVector,
  Unbalanced,
  NotConnected,
  NoSolution,
  VertexHasLeg,
  DegenerateImmersion,
  NotGeneralPosition,
  NonGenericConfiguration,
  UnknownType,
  NotSTIndependent,
  PoleAtHbar,
  NonIntegralCross,
  CycleNotVerified,
  NonGenericDirection,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ptc
