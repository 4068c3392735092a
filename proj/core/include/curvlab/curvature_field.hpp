#pragma once

#include <optional>
#include <string>
#include <variant>

#include "curvlab/expr.hpp"

namespace curvlab {

struct ConstantLoad {
  double value = 0.0;
};

/// f(x, s) = h(x) k(s); both factors are one-variable expressions in x
/// (k is evaluated with its variable bound to s).
struct SeparatedProduct {
  Expr h;
  Expr k;
};

struct ExprLoad {
  Expr e;
};

/// left_value for x < z, right_value for x > z, their mean at x = z.
struct StepLoad {
  double z = 0.5;
  double left_value = 1.0;
  double right_value = -1.0;
};

/// amplitude * sgn(z - x) * |x - z|^alpha.
struct PowerSignLoad {
  double z = 0.5;
  double amplitude = 1.0;
  double alpha = 1.0;
};

/// The prescribed curvature f(x, s). Pure and immutable.
class CurvatureField {
 public:
  using Spec = std::variant<ConstantLoad, SeparatedProduct, ExprLoad, StepLoad, PowerSignLoad>;

  CurvatureField(Spec spec);  // NOLINT(google-explicit-constructor)

  static CurvatureField constant(double value) { return CurvatureField(ConstantLoad{value}); }
  static CurvatureField step(double z, double left, double right) { return CurvatureField(StepLoad{z, left, right}); }
  static CurvatureField power_sign(double z, double amplitude, double alpha) {
    return CurvatureField(PowerSignLoad{z, amplitude, alpha});
  }
  /// Parses a two-variable expression in x and s.
  static CurvatureField expression(const std::string& text);
  /// Parses h(x) and k(s); k is written in the variable x.
  static CurvatureField product(const std::string& h, const std::string& k);

  /// Throws Error(DomainError) when the value is not finite.
  [[nodiscard]] double operator()(double x, double s) const;
  [[nodiscard]] bool depends_on_state() const;
  [[nodiscard]] const Spec& spec() const noexcept { return spec_; }
  /// Human readable description, e.g. "power_sign(z=0.5, A=3, alpha=1)".
  [[nodiscard]] std::string describe() const;

 private:
  Spec spec_;
};

}  // namespace curvlab
