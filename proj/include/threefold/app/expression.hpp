#pragma once

#include <memory>
#include <string>

#include "threefold/errors.hpp"

namespace threefold {

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : ValidationError(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Compiled arithmetic expression in the coordinates x, y, z.
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := atom ('^' unary)?          right associative, -x^2 = -(x^2)
//   atom   := number | x | y | z | pi | e | fn '(' expr ')' | '(' expr ')'
//   fn     := sin | cos | exp
class Expression {
 public:
  // Throws ParseError with the offending position.
  static Expression parse(const std::string& text);

  double operator()(double x, double y, double z) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace threefold
