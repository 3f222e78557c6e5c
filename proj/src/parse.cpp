#include <cctype>
#include <string>

#include "expr_internal.hpp"
#include "walkerlie/expr.hpp"

namespace walkerlie {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Chart& chart) : s_(text), chart_(chart) {}

  ExprPtr run() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& s_;
  const Chart& chart_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(std::string("expected ") + what, pos_);
  }

  ExprPtr parse_expr() {
    std::vector<ExprPtr> terms;
    terms.push_back(parse_term());
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        terms.push_back(parse_term());
      } else if (c == '-') {
        ++pos_;
        terms.push_back(detail::negate_term(parse_term()));
      } else {
        break;
      }
    }
    if (terms.size() == 1) return terms[0];
    return sum(std::move(terms));
  }

  ExprPtr parse_term() {
    ExprPtr node = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        ExprPtr rhs = parse_factor();
        if (node->kind == ExprKind::Product) {
          std::vector<ExprPtr> kids = node->kids;
          kids.push_back(rhs);
          node = product(std::move(kids));
        } else {
          node = product(node, rhs);
        }
      } else if (c == '/') {
        ++pos_;
        ExprPtr rhs = parse_factor();
        if (node->kind == ExprKind::Constant && rhs->kind == ExprKind::Constant &&
            rhs->value != 0) {
          node = constant(node->value / rhs->value);
        } else {
          node = quotient(node, rhs);
        }
      } else {
        break;
      }
    }
    return node;
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_base();
    if (peek() == '^') {
      ++pos_;
      std::size_t at = pos_;
      int k = parse_int();
      if (k == 0) throw ParseError("zero exponent", at);
      return power(base, k);
    }
    return base;
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected integer exponent", start);
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1000000) throw ParseError("exponent too large", start);
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }

  ExprPtr parse_base() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '-') {
      ++pos_;
      return detail::negate_term(parse_base());
    }
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      expect(')', "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string ident = parse_ident();
      if (peek() == '(') {
        Fn fn;
        if (ident == "sin") {
          fn = Fn::Sin;
        } else if (ident == "cos") {
          fn = Fn::Cos;
        } else if (ident == "exp") {
          fn = Fn::Exp;
        } else if (ident == "log") {
          fn = Fn::Log;
        } else {
          throw ParseError("unknown function '" + ident + "'", at);
        }
        ++pos_;  // '('
        ExprPtr arg = parse_expr();
        expect(')', "')'");
        return call(fn, arg);
      }
      if (!chart_.index_of(ident)) throw UnknownIdentifierError(ident, at);
      return Expr::make_variable(ident);
    }
    throw ParseError("expected expression", pos_);
  }

  ExprPtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("malformed number", start);
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    return constant(rational_from_decimal(s_.substr(start, pos_ - start)));
  }

  std::string parse_ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }
};

}  // namespace

ExprPtr parse(const std::string& text, const Chart& chart) { return Parser(text, chart).run(); }

}  // namespace walkerlie
