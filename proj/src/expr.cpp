#include "iwave/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "iwave/errors.hpp"

namespace iwave {

struct Expr::Node {
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp };
  Kind kind;
  double value = 0.0;
  std::size_t var = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
public:
  Parser(const std::string& s, const std::vector<std::string>& vars)
      : s_(s), vars_(vars) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ConfigError("expression: unexpected input at '" +
                        s_.substr(pos_) + "'");
    return e;
  }

private:
  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Node::Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = make(Node::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = make(Node::Kind::Mul, lhs, factor());
      else if (accept('/'))
        lhs = make(Node::Kind::Div, lhs, factor());
      else
        return lhs;
    }
  }

  // '^' binds tighter than unary minus: -2^2 = -(2^2).
  NodePtr factor() {
    if (accept('-')) return make(Node::Kind::Neg, factor());
    if (accept('+')) return factor();
    NodePtr base = primary();
    if (accept('^')) return make(Node::Kind::Pow, base, factor());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ConfigError("expression: unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (accept('(')) {
      NodePtr e = expr();
      if (!accept(')')) throw ConfigError("expression: missing ')'");
      return e;
    }
    throw ConfigError(std::string("expression: unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ConfigError("expression: bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Const;
    n->value = v;
    return n;
  }

  NodePtr ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "sin" || name == "cos" || name == "exp") {
      if (!accept('(')) throw ConfigError("expression: expected '(' after " + name);
      NodePtr arg = expr();
      if (!accept(')')) throw ConfigError("expression: missing ')'");
      Node::Kind k = name == "sin"   ? Node::Kind::Sin
                     : name == "cos" ? Node::Kind::Cos
                                     : Node::Kind::Exp;
      return make(k, arg);
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Var;
        n->var = i;
        return n;
      }
    }
    throw ConfigError("expression: unknown name '" + name + "'");
  }
};

double eval_node(const Node& n, std::span<const double> v) {
  switch (n.kind) {
    case Node::Kind::Const: return n.value;
    case Node::Kind::Var: return v[n.var];
    case Node::Kind::Neg: return -eval_node(*n.a, v);
    case Node::Kind::Add: return eval_node(*n.a, v) + eval_node(*n.b, v);
    case Node::Kind::Sub: return eval_node(*n.a, v) - eval_node(*n.b, v);
    case Node::Kind::Mul: return eval_node(*n.a, v) * eval_node(*n.b, v);
    case Node::Kind::Div: return eval_node(*n.a, v) / eval_node(*n.b, v);
    case Node::Kind::Pow: return std::pow(eval_node(*n.a, v), eval_node(*n.b, v));
    case Node::Kind::Sin: return std::sin(eval_node(*n.a, v));
    case Node::Kind::Cos: return std::cos(eval_node(*n.a, v));
    case Node::Kind::Exp: return std::exp(eval_node(*n.a, v));
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text, const std::vector<std::string>& variables) {
  Expr e;
  e.root_ = Parser(text, variables).run();
  e.text_ = text;
  e.n_vars_ = variables.size();
  return e;
}

double Expr::eval(std::span<const double> values) const {
  if (!root_) throw ConfigError("expression: empty");
  if (values.size() < n_vars_)
    throw ConfigError("expression: wrong number of variable values");
  return eval_node(*root_, values);
}

}  // namespace iwave
