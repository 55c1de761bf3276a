#include "threefold/app/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace threefold {

struct Expression::Node {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp } kind;
  double value = 0.0;
  int var = 0;
  std::shared_ptr<const Node> a, b;

  double eval(const double* p) const {
    switch (kind) {
      case Kind::Number: return value;
      case Kind::Var: return p[var];
      case Kind::Neg: return -a->eval(p);
      case Kind::Add: return a->eval(p) + b->eval(p);
      case Kind::Sub: return a->eval(p) - b->eval(p);
      case Kind::Mul: return a->eval(p) * b->eval(p);
      case Kind::Div: return a->eval(p) / b->eval(p);
      case Kind::Pow: return std::pow(a->eval(p), b->eval(p));
      case Kind::Sin: return std::sin(a->eval(p));
      case Kind::Cos: return std::cos(a->eval(p));
      case Kind::Exp: return std::exp(a->eval(p));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using Ptr = std::shared_ptr<const Node>;

Ptr make(Node::Kind k, Ptr a = nullptr, Ptr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Ptr parse() {
    Ptr e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ptr expr() {
    Ptr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Node::Kind::Add, lhs, term());
      else if (accept('-')) lhs = make(Node::Kind::Sub, lhs, term());
      else return lhs;
    }
  }

  Ptr term() {
    Ptr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Node::Kind::Mul, lhs, unary());
      else if (accept('/')) lhs = make(Node::Kind::Div, lhs, unary());
      else return lhs;
    }
  }

  Ptr unary() {
    if (accept('-')) return make(Node::Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Ptr power() {
    Ptr base = atom();
    if (accept('^')) return make(Node::Kind::Pow, base, unary());
    return base;
  }

  Ptr atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (accept('(')) {
      Ptr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) throw ParseError("malformed number", pos_);
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "x" || name == "y" || name == "z") {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Var;
        n->var = name[0] - 'x';
        return n;
      }
      if (name == "pi" || name == "e") {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Number;
        n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
        return n;
      }
      Node::Kind k;
      if (name == "sin") k = Node::Kind::Sin;
      else if (name == "cos") k = Node::Kind::Cos;
      else if (name == "exp") k = Node::Kind::Exp;
      else throw ParseError("unknown identifier '" + name + "'", start);
      if (!accept('(')) throw ParseError("expected '(' after " + name, pos_);
      Ptr arg = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return make(k, arg);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expression::operator()(double x, double y, double z) const {
  const double p[3] = {x, y, z};
  return root_->eval(p);
}

}  // namespace threefold
