#ifndef REINHARDT_EXPRESSION_HPP_
#define REINHARDT_EXPRESSION_HPP_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reinhardt {

// Closed-form expression mini-language used by custom domain descriptors and
// custom Example 2 profiles.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: exp log sin cos sqrt abs (unary), min max (binary).
// Constants: pi, e. Evaluation follows IEEE double semantics; no rewriting is
// performed, so log(0) yields -inf and so on.
class Expression {
 public:
  /// Parses `text`; identifiers other than the listed variables, functions and
  /// constants are rejected with InputError.
  static Expression parse(std::string_view text, std::vector<std::string> variables);

  /// `values[i]` binds the i-th variable passed to parse().
  double operator()(std::span<const double> values) const;
  double operator()(double a, double b) const;

  const std::string& source() const { return source_; }
  const std::vector<std::string>& variables() const { return variables_; }

  struct Node;

 private:
  Expression() = default;
  std::shared_ptr<const Node> root_;
  std::string source_;
  std::vector<std::string> variables_;
};

}  // namespace reinhardt

#endif  // REINHARDT_EXPRESSION_HPP_
