#include "curvlab/curvature_field.hpp"

#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

CurvatureField::CurvatureField(Spec spec) : spec_(std::move(spec)) {
  std::visit(overloaded{
                 [](const ConstantLoad& c) {
                   if (!std::isfinite(c.value)) throw Error(ErrorCode::InvalidArgument, "constant load must be finite");
                 },
                 [](const StepLoad& s) {
                   if (!std::isfinite(s.z) || !std::isfinite(s.left_value) || !std::isfinite(s.right_value))
                     throw Error(ErrorCode::InvalidArgument, "step load parameters must be finite");
                 },
                 [](const PowerSignLoad& p) {
                   if (!std::isfinite(p.z) || !std::isfinite(p.amplitude) || !(p.alpha >= 0.0))
                     throw Error(ErrorCode::InvalidArgument, "power-sign load needs finite z, A and alpha >= 0");
                 },
                 [](const SeparatedProduct& p) {
                   if (p.h.uses_s() || p.k.uses_s())
                     throw Error(ErrorCode::InvalidArgument, "product factors are one-variable expressions");
                 },
                 [](const ExprLoad&) {},
             },
             spec_);
}

CurvatureField CurvatureField::expression(const std::string& text) {
  return CurvatureField(ExprLoad{Expr::parse(text, Expr::Variables::XAndS)});
}

CurvatureField CurvatureField::product(const std::string& h, const std::string& k) {
  return CurvatureField(SeparatedProduct{Expr::parse(h, Expr::Variables::XOnly), Expr::parse(k, Expr::Variables::XOnly)});
}

double CurvatureField::operator()(double x, double s) const {
  const double value = std::visit(overloaded{
                                      [](const ConstantLoad& c) { return c.value; },
                                      [&](const SeparatedProduct& p) { return p.h.eval(x) * p.k.eval(s); },
                                      [&](const ExprLoad& e) { return e.e.eval(x, s); },
                                      [&](const StepLoad& st) {
                                        if (x < st.z) return st.left_value;
                                        if (x > st.z) return st.right_value;
                                        return 0.5 * (st.left_value + st.right_value);
                                      },
                                      [&](const PowerSignLoad& p) {
                                        const double d = p.z - x;
                                        if (d == 0.0) return 0.0;
                                        const double sign = d > 0.0 ? 1.0 : -1.0;
                                        return p.amplitude * sign * std::pow(std::abs(d), p.alpha);
                                      },
                                  },
                                  spec_);
  if (!std::isfinite(value)) throw Error(ErrorCode::DomainError, "curvature field is not finite at this point");
  return value;
}

bool CurvatureField::depends_on_state() const {
  return std::visit(overloaded{
                        [](const SeparatedProduct& p) { return p.k.uses_x(); },
                        [](const ExprLoad& e) { return e.e.uses_s(); },
                        [](const auto&) { return false; },
                    },
                    spec_);
}

std::string CurvatureField::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const ConstantLoad& c) { os << "constant(" << c.value << ")"; },
                 [&](const SeparatedProduct& p) { os << "product(h=" << p.h.text() << ", k=" << p.k.text() << ")"; },
                 [&](const ExprLoad& e) { os << "expr(" << e.e.text() << ")"; },
                 [&](const StepLoad& s) {
                   os << "step(z=" << s.z << ", left=" << s.left_value << ", right=" << s.right_value << ")";
                 },
                 [&](const PowerSignLoad& p) {
                   os << "power_sign(z=" << p.z << ", A=" << p.amplitude << ", alpha=" << p.alpha << ")";
                 },
             },
             spec_);
  return os.str();
}

}  // namespace curvlab
