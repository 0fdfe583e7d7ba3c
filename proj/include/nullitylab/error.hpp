#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nullitylab {

enum class ErrorCode {
  DimensionMismatch,
  SingularMetric,
  IllConditioned,
  DegeneratePlane,
  SubalgebraClosureViolation,
  NonlinearNullJacobiSet,
  NoWitness,
  ClosureOverflow,
  Inconclusive,
  BadDimension,
  BadMode,
  CertificateFailure,
  EigenDegeneracy,
  NotInNullity,
  ParseError,
  PreconditionFailed,
};

std::string_view to_string(ErrorCode code);

/// True for codes that report a tolerance-sensitive or undecidable numerical
/// verdict rather than bad input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace nullitylab
