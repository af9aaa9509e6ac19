#include "ptlab/error.hpp"

namespace ptlab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SubLatticeNotContained: return "SubLatticeNotContained";
    case ErrorCode::NotSubmonoid: return "NotSubmonoid";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::NotSharp: return "NotSharp";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NonMonomialReduction: return "NonMonomialReduction";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::PillarNotFound: return "PillarNotFound";
    case ErrorCode::IncompatibleComponents: return "IncompatibleComponents";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace ptlab
