#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

/// Stable identifiers for every failure the library reports.
enum class ErrorCode {
  SlopeInfinite,
  DomainError,
  ParseError,
  InvalidArgument,
  NotLocallyIntegrable,
  CriterionShapeError,
  MaxIterations,
  UnboundedBelow,
  OuterNoConvergence,
  RangeExceeded,
  ShapeViolation,
  LocalizationUnverifiable,
  InequalityViolated,
  NotApplicable,
  ConfigError,
};

[[nodiscard]] const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by psi_inv when |p| >= 1: the slope is infinite (gradient blow-up).
class SlopeInfinite : public Error {
 public:
  explicit SlopeInfinite(double p);
  [[nodiscard]] double momentum() const noexcept { return p_; }

 private:
  double p_;
};

/// Syntax error in an expression or config file; column (and line) are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column, ErrorCode code = ErrorCode::ParseError);
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace curvlab
