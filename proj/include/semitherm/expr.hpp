#pragma once

#include <memory>
#include <string>

namespace semitherm {

// Small arithmetic expression in one variable `x`, used for potentials in
// config documents. Grammar: numbers, x, pi, + - * / ^, unary minus,
// parentheses and sin cos tan exp log sqrt abs.
class Expression {
 public:
  static Expression parse(const std::string& text);

  double operator()(double x) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace semitherm
