#ifndef SQED_EXPR_HPP
#define SQED_EXPR_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "sqed/types.hpp"

namespace sqed {

// Arithmetic over the two operands of an instruction: identifiers `a` and
// `b`, decimal literals, + - *, unary minus, parentheses. Results are reduced
// mod |V| at evaluation time, so "a + b" and "(a + b) % |V|" agree.
class Expr {
 public:
  struct Node;

  static Expr parse(const std::string& text);  // ConfigError on bad syntax

  Value eval(Value a, Value b, std::uint32_t modulus) const;
  const std::string& text() const { return text_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace sqed

#endif
