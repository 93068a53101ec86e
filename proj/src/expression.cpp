#include "reinhardt/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <utility>

#include "reinhardt/errors.hpp"

namespace reinhardt {

enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Exp, Log, Sin, Cos, Sqrt, Abs, Min, Max };

struct Expression::Node {
  Op op = Op::Const;
  double value = 0.0;
  std::size_t var = 0;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

namespace {

using NodePtr = std::unique_ptr<Expression::Node>;

NodePtr make_leaf(Op op, double value, std::size_t var = 0) {
  auto n = std::make_unique<Expression::Node>();
  n->op = op;
  n->value = value;
  n->var = var;
  return n;
}

NodePtr make_node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_unique<Expression::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr parse() {
    auto n = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression error at offset " + std::to_string(pos_) + ": " + what + " in \"" +
                     std::string(text_) + "\"");
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
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Op::Add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = make_node(Op::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Op::Mul, std::move(lhs), unary());
      } else if (accept('/')) {
        lhs = make_node(Op::Div, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_node(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make_node(Op::Pow, std::move(base), unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto n = expr();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    char* end = nullptr;
    // strtod needs a terminated buffer
    std::string tail(text_.substr(pos_));
    const double v = std::strtod(tail.c_str(), &end);
    const auto used = static_cast<std::size_t>(end - tail.c_str());
    if (used == 0) fail("malformed number");
    pos_ += used;
    return make_leaf(Op::Const, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));

    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      static const std::pair<const char*, Op> unary_fns[] = {{"exp", Op::Exp},   {"log", Op::Log},
                                                             {"sin", Op::Sin},   {"cos", Op::Cos},
                                                             {"sqrt", Op::Sqrt}, {"abs", Op::Abs}};
      for (const auto& [fn, op] : unary_fns) {
        if (name == fn) {
          auto arg = expr();
          expect(')');
          return make_node(op, std::move(arg));
        }
      }
      if (name == "min" || name == "max") {
        auto a = expr();
        expect(',');
        auto b = expr();
        expect(')');
        return make_node(name == "min" ? Op::Min : Op::Max, std::move(a), std::move(b));
      }
      pos_ = start;
      fail("unknown function '" + name + "'");
    }

    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return make_leaf(Op::Var, 0.0, i);
    }
    if (name == "pi") return make_leaf(Op::Const, std::numbers::pi);
    if (name == "e") return make_leaf(Op::Const, std::numbers::e);
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

double eval(const Expression::Node& n, std::span<const double> v) {
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return v[n.var];
    case Op::Neg: return -eval(*n.lhs, v);
    case Op::Add: return eval(*n.lhs, v) + eval(*n.rhs, v);
    case Op::Sub: return eval(*n.lhs, v) - eval(*n.rhs, v);
    case Op::Mul: return eval(*n.lhs, v) * eval(*n.rhs, v);
    case Op::Div: return eval(*n.lhs, v) / eval(*n.rhs, v);
    case Op::Pow: return std::pow(eval(*n.lhs, v), eval(*n.rhs, v));
    case Op::Exp: return std::exp(eval(*n.lhs, v));
    case Op::Log: return std::log(eval(*n.lhs, v));
    case Op::Sin: return std::sin(eval(*n.lhs, v));
    case Op::Cos: return std::cos(eval(*n.lhs, v));
    case Op::Sqrt: return std::sqrt(eval(*n.lhs, v));
    case Op::Abs: return std::fabs(eval(*n.lhs, v));
    case Op::Min: return std::fmin(eval(*n.lhs, v), eval(*n.rhs, v));
    case Op::Max: return std::fmax(eval(*n.lhs, v), eval(*n.rhs, v));
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Expression e;
  Parser p(text, variables);
  e.root_ = p.parse();
  e.source_ = std::string(text);
  e.variables_ = std::move(variables);
  return e;
}

double Expression::operator()(std::span<const double> values) const {
  if (values.size() != variables_.size()) {
    throw InputError("expression expects " + std::to_string(variables_.size()) + " values");
  }
  return eval(*root_, values);
}

double Expression::operator()(double a, double b) const {
  const double v[2] = {a, b};
  return (*this)(std::span<const double>(v, 2));
}

}  // namespace reinhardt
