#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace curvlab {

/// Arithmetic expression in the variables x and s.
///
/// Grammar (whitespace ignored):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' factor)?            -- '^' is right-associative
///   atom   := number | 'x' | 's' | '(' expr ')' | func '(' expr ')'
///   func   := abs | sgn | log | sqrt | sin | cos | exp
/// There is no unary minus; write (0-x). Numbers are decimal literals with an
/// optional exponent.
///
/// Evaluation throws Error(DomainError) on log of a non-positive number, sqrt of a
/// negative number, division by zero, or any non-finite intermediate.
class Expr {
 public:
  enum class Variables { XOnly, XAndS };

  /// Throws ParseError (1-based column) on malformed input.
  static Expr parse(std::string_view text, Variables vars = Variables::XAndS);

  [[nodiscard]] double eval(double x, double s = 0.0) const;
  [[nodiscard]] bool uses_s() const noexcept { return uses_s_; }
  [[nodiscard]] bool uses_x() const noexcept { return uses_x_; }
  [[nodiscard]] const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  Expr(std::shared_ptr<const Node> root, std::string text, bool uses_x, bool uses_s)
      : root_(std::move(root)), text_(std::move(text)), uses_x_(uses_x), uses_s_(uses_s) {}

  std::shared_ptr<const Node> root_;
  std::string text_;
  bool uses_x_ = false;
  bool uses_s_ = false;
};

}  // namespace curvlab
