#include <cctype>
#include <charconv>
#include <optional>
#include <string>

#include "exlab/errors.hpp"
#include "exlab/expr.hpp"

namespace exlab {

namespace {

std::optional<FuncKind> lookup_func(const std::string& name) {
  if (name == "exp") return FuncKind::Exp;
  if (name == "log") return FuncKind::Log;
  if (name == "sin") return FuncKind::Sin;
  if (name == "cos") return FuncKind::Cos;
  if (name == "sqrt") return FuncKind::Sqrt;
  if (name == "abs") return FuncKind::Abs;
  if (name == "sign") return FuncKind::Sign;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("syntax error at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expr parse_expr() {
    std::vector<Expr> terms;
    terms.push_back(parse_term());
    for (;;) {
      if (eat('+')) {
        terms.push_back(parse_term());
      } else if (eat('-')) {
        terms.push_back(Expr::negate(parse_term()));
      } else {
        break;
      }
    }
    return Expr::sum(std::move(terms));
  }

  Expr parse_term() {
    Expr acc = parse_factor();
    for (;;) {
      if (eat('*')) {
        acc = Expr::product({acc, parse_factor()});
      } else if (eat('/')) {
        size_t at = pos_;
        Expr den = parse_factor();
        if (den.is_zero())
          throw InputError("division by zero at column " + std::to_string(at + 1));
        acc = Expr::quotient(acc, den);
      } else {
        break;
      }
    }
    return acc;
  }

  Expr parse_factor() {
    Expr b = parse_atom();
    if (eat('^')) return Expr::power(std::move(b), parse_atom());
    return b;
  }

  Expr parse_atom() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '-') {
      ++pos_;
      return Expr::negate(parse_atom());
    }
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr parse_number() {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    double v = 0.0;
    auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{}) fail("malformed number");
    pos_ = static_cast<size_t>(res.ptr - s_.data());
    return Expr::constant(v);
  }

  Expr parse_ident() {
    size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (peek() == '(') {
      auto fk = lookup_func(name);
      if (!fk) {
        pos_ = start;
        fail("unknown function name '" + name + "'");
      }
      ++pos_;  // '('
      Expr arg = parse_expr();
      if (!eat(')')) fail("expected ')' closing call to '" + name + "'");
      return Expr::call(*fk, std::move(arg));
    }
    if (lookup_func(name)) {
      pos_ = start;
      fail("expected '(' after function name '" + name + "'");
    }
    return Expr::variable(std::move(name));
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

}  // namespace exlab
