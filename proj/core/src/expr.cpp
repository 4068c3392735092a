#include "curvlab/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "curvlab/errors.hpp"

namespace curvlab {

enum class Func { Abs, Sgn, Log, Sqrt, Sin, Cos, Exp };

struct Expr::Node {
  enum class Kind { Number, VarX, VarS, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Number;
  double value = 0.0;
  Func func = Func::Abs;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"abs", Func::Abs},
    {"sgn", Func::Sgn},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
}};

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, bool allow_s) : text_(text), allow_s_(allow_s) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

  bool uses_x = false;
  bool uses_s = false;

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 0, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      skip_ws();
      fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "'"
                               : "expected '" + std::string(1, c) + "' before end of input");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = make(Kind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = atom();
    if (accept('^')) return make(Kind::Pow, base, factor());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "x") {
        uses_x = true;
        return make(Kind::VarX);
      }
      if (word == "s") {
        if (!allow_s_) {
          pos_ = start;
          fail("variable 's' is not allowed in a one-dimensional expression");
        }
        uses_s = true;
        return make(Kind::VarS);
      }
      for (const auto& [name, func] : kFunctions) {
        if (word == name) {
          expect('(');
          auto call = std::make_shared<Expr::Node>();
          call->kind = Kind::Call;
          call->func = func;
          call->lhs = expr();
          expect(')');
          return call;
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t count = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++count;
      }
      return count;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent");
    }
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Number;
    const std::string literal(text_.substr(start, pos_ - start));
    n->value = std::stod(literal);
    if (!std::isfinite(n->value)) {
      pos_ = start;
      fail("number out of range");
    }
    return n;
  }

  std::string_view text_;
  bool allow_s_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain(const std::string& what) { throw Error(ErrorCode::DomainError, what); }

double checked(double v, const char* op) {
  if (!std::isfinite(v)) domain(std::string("non-finite result in ") + op);
  return v;
}

double evaluate(const Expr::Node& n, double x, double s) {
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::VarX: return x;
    case Kind::VarS: return s;
    case Kind::Add: return checked(evaluate(*n.lhs, x, s) + evaluate(*n.rhs, x, s), "+");
    case Kind::Sub: return checked(evaluate(*n.lhs, x, s) - evaluate(*n.rhs, x, s), "-");
    case Kind::Mul: return checked(evaluate(*n.lhs, x, s) * evaluate(*n.rhs, x, s), "*");
    case Kind::Div: {
      const double den = evaluate(*n.rhs, x, s);
      if (den == 0.0) domain("division by zero");
      return checked(evaluate(*n.lhs, x, s) / den, "/");
    }
    case Kind::Pow: {
      const double base = evaluate(*n.lhs, x, s);
      const double expo = evaluate(*n.rhs, x, s);
      if (base == 0.0 && expo < 0.0) domain("zero raised to a negative power");
      return checked(std::pow(base, expo), "^");
    }
    case Kind::Call: {
      const double arg = evaluate(*n.lhs, x, s);
      switch (n.func) {
        case Func::Abs: return std::abs(arg);
        case Func::Sgn: return static_cast<double>((arg > 0.0) - (arg < 0.0));
        case Func::Log:
          if (!(arg > 0.0)) domain("log of a non-positive number");
          return std::log(arg);
        case Func::Sqrt:
          if (arg < 0.0) domain("sqrt of a negative number");
          return std::sqrt(arg);
        case Func::Sin: return std::sin(arg);
        case Func::Cos: return std::cos(arg);
        case Func::Exp: return checked(std::exp(arg), "exp");
      }
    }
  }
  domain("corrupt expression");
}

}  // namespace

Expr Expr::parse(std::string_view text, Variables vars) {
  Parser parser(text, vars == Variables::XAndS);
  NodePtr root = parser.parse();
  return Expr(std::move(root), std::string(text), parser.uses_x, parser.uses_s);
}

double Expr::eval(double x, double s) const { return evaluate(*root_, x, s); }

}  // namespace curvlab
