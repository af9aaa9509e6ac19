// Error type shared by all ptlab modules.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptlab {

enum class ErrorCode {
  SubLatticeNotContained,
  NotSubmonoid,
  NotSaturated,
  NotSharp,
  NotExact,
  PrimeMismatch,
  RingMismatch,
  NonMonomialReduction,
  AxiomViolation,
  PillarNotFound,
  IncompatibleComponents,
  InvalidPresentation,
  UnsupportedBase,
  InvalidArgument,
  ParseError,
  InvariantViolation,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ptlab
