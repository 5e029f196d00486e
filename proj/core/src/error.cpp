#include "ptc/error.hpp"

namespace ptc {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Unbalanced: return "Unbalanced";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::VertexHasLeg: return "VertexHasLeg";
    case ErrorCode::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorCode::NotGeneralPosition: return "NotGeneralPosition";
    case ErrorCode::NonGenericConfiguration: return "NonGenericConfiguration";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::NotSTIndependent: return "NotSTIndependent";
    case ErrorCode::PoleAtHbar: return "PoleAtHbar";
    case ErrorCode::NonIntegralCross: return "NonIntegralCross";
    case ErrorCode::CycleNotVerified: return "CycleNotVerified";
    case ErrorCode::NonGenericDirection: return "NonGenericDirection";
  }
  return "Error";
}

}  // namespace ptc
