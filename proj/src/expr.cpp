#include "sqed/expr.hpp"

#include <cctype>
#include <cstdlib>

#include "sqed/errors.hpp"

namespace sqed {

struct Expr::Node {
  enum Kind { A, B, Lit, Add, Sub, Mul, Neg } kind;
  std::int64_t lit = 0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("bad expression \"" + s + "\" at offset " +
                      std::to_string(pos) + ": " + why);
  }

  NodePtr make(Expr::Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr,
               std::int64_t lit = 0) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->lit = lit;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr factor() {
    skip();
    if (pos >= s.size()) fail("operand expected");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (c == '-') {
      ++pos;
      return make(Expr::Node::Neg, factor());
    }
    if (c == 'a' || c == 'b') {
      ++pos;
      if (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos])))
        fail("unknown identifier");
      return make(c == 'a' ? Expr::Node::A : Expr::Node::B);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      return make(Expr::Node::Lit, nullptr, nullptr,
                  std::strtoll(s.substr(start, pos - start).c_str(), nullptr, 10));
    }
    fail("operand expected");
  }

  NodePtr term() {
    NodePtr l = factor();
    while (eat('*')) l = make(Expr::Node::Mul, l, factor());
    return l;
  }

  NodePtr expr() {
    NodePtr l = term();
    for (;;) {
      if (eat('+'))
        l = make(Expr::Node::Add, l, term());
      else if (eat('-'))
        l = make(Expr::Node::Sub, l, term());
      else
        return l;
    }
  }
};

std::int64_t eval_node(const Expr::Node& n, std::int64_t a, std::int64_t b) {
  switch (n.kind) {
    case Expr::Node::A:
      return a;
    case Expr::Node::B:
      return b;
    case Expr::Node::Lit:
      return n.lit;
    case Expr::Node::Add:
      return eval_node(*n.lhs, a, b) + eval_node(*n.rhs, a, b);
    case Expr::Node::Sub:
      return eval_node(*n.lhs, a, b) - eval_node(*n.rhs, a, b);
    case Expr::Node::Mul:
      return eval_node(*n.lhs, a, b) * eval_node(*n.rhs, a, b);
    case Expr::Node::Neg:
      return -eval_node(*n.lhs, a, b);
  }
  return 0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Parser p(text);
  Expr e;
  e.root_ = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  e.text_ = text;
  return e;
}

Value Expr::eval(Value a, Value b, std::uint32_t modulus) const {
  std::int64_t raw = eval_node(*root_, a, b);
  std::int64_t m = static_cast<std::int64_t>(modulus);
  std::int64_t r = raw % m;
  if (r < 0) r += m;
  return static_cast<Value>(r);
}

}  // namespace sqed
