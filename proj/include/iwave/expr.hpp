#ifndef IWAVE_EXPR_HPP
#define IWAVE_EXPR_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace iwave {

// Tiny closed-form expression evaluator used for config-defined metrics,
// wave profiles, and test functions.
//
// Grammar: + - * / ^ (right assoc), unary minus, parentheses,
// sin/cos/exp, numeric literals, and the named variables given at parse
// time (chart coordinates, or "u" for test functions).
class Expr {
public:
  Expr() = default;

  static Expr parse(const std::string& text,
                    const std::vector<std::string>& variables);

  double eval(std::span<const double> values) const;

  bool empty() const { return root_ == nullptr; }
  const std::string& text() const { return text_; }

  struct Node;

private:
  std::shared_ptr<const Node> root_;
  std::string text_;
  std::size_t n_vars_ = 0;
};

}  // namespace iwave

#endif
