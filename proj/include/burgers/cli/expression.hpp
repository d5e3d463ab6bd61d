#pragma once

// Tiny arithmetic language for custom initial profiles:
//   numbers, x, pi, + - * / ^ (right-associative), unary minus,
//   sin cos exp tanh erf, parentheses.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/special.hpp"

namespace burgers::cli {

class Expression {
 public:
  static Expression parse(std::string_view text) {
    Parser p{text};
    Expression e;
    e.source_ = std::string(text);
    e.root_ = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("unexpected '" + std::string(1, text[p.pos]) + "'");
    return e;
  }

  double operator()(double x) const { return eval(*root_, x); }
  const std::string& source() const { return source_; }

 private:
  enum class Op { Num, X, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Tanh, Erf };
  struct Node {
    Op op;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;
  };
  using Ptr = std::shared_ptr<const Node>;

  static Ptr make(Op op, Ptr a = nullptr, Ptr b = nullptr, double v = 0.0) {
    return std::make_shared<const Node>(Node{op, v, std::move(a), std::move(b)});
  }

  static double eval(const Node& n, double x) {
    switch (n.op) {
      case Op::Num: return n.value;
      case Op::X: return x;
      case Op::Add: return eval(*n.a, x) + eval(*n.b, x);
      case Op::Sub: return eval(*n.a, x) - eval(*n.b, x);
      case Op::Mul: return eval(*n.a, x) * eval(*n.b, x);
      case Op::Div: return eval(*n.a, x) / eval(*n.b, x);
      case Op::Pow: return std::pow(eval(*n.a, x), eval(*n.b, x));
      case Op::Neg: return -eval(*n.a, x);
      case Op::Sin: return std::sin(eval(*n.a, x));
      case Op::Cos: return std::cos(eval(*n.a, x));
      case Op::Exp: return std::exp(eval(*n.a, x));
      case Op::Tanh: return std::tanh(eval(*n.a, x));
      case Op::Erf: return burgers::erf(eval(*n.a, x));
    }
    return 0.0;
  }

  struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
      throw ConfigError("initial profile expression, column " + std::to_string(pos + 1) + ": " + msg + " in \"" +
                        std::string(s) + "\"");
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool accept(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }

    Ptr expr() {
      Ptr lhs = term();
      for (;;) {
        if (accept('+')) lhs = make(Op::Add, lhs, term());
        else if (accept('-')) lhs = make(Op::Sub, lhs, term());
        else return lhs;
      }
    }
    Ptr term() {
      Ptr lhs = unary();
      for (;;) {
        if (accept('*')) lhs = make(Op::Mul, lhs, unary());
        else if (accept('/')) lhs = make(Op::Div, lhs, unary());
        else return lhs;
      }
    }
    Ptr unary() {
      if (accept('-')) return make(Op::Neg, unary());
      if (accept('+')) return unary();
      return power();
    }
    Ptr power() {
      Ptr base = primary();
      if (accept('^')) return make(Op::Pow, base, unary());
      return base;
    }
    Ptr primary() {
      skip();
      if (pos >= s.size()) fail("unexpected end of input");
      const char c = s[pos];
      if (accept('(')) {
        Ptr e = expr();
        if (!accept(')')) fail("expected ')'");
        return e;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        const std::string rest(s.substr(pos));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) fail("bad number");
        pos += static_cast<std::size_t>(end - rest.c_str());
        return make(Op::Num, nullptr, nullptr, v);
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos;
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
        const std::string_view id = s.substr(start, pos - start);
        if (id == "x") return make(Op::X);
        if (id == "pi") return make(Op::Num, nullptr, nullptr, std::numbers::pi);
        Op op;
        if (id == "sin") op = Op::Sin;
        else if (id == "cos") op = Op::Cos;
        else if (id == "exp") op = Op::Exp;
        else if (id == "tanh") op = Op::Tanh;
        else if (id == "erf") op = Op::Erf;
        else {
          pos = start;
          fail("unknown identifier '" + std::string(id) + "'");
        }
        if (!accept('(')) fail("expected '(' after " + std::string(id));
        Ptr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return make(op, arg);
      }
      fail("unexpected '" + std::string(1, c) + "'");
    }
  };

  std::string source_;
  Ptr root_;
};

}  // namespace burgers::cli
