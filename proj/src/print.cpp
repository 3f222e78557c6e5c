#include <sstream>
#include <string>

#include "expr_internal.hpp"
#include "walkerlie/expr.hpp"

namespace walkerlie {

namespace {

std::string print_expr(const ExprPtr& e);
std::string print_term(const ExprPtr& e);

// Positive rational literal; inline "p/q" is only safe at the head of a
// term, where the parser folds the constant quotient back together.
std::string literal(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string print_factor(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Variable:
      return e->name;
    case ExprKind::Call:
      return std::string(fn_name(e->fn)) + "(" + print_expr(e->kids[0]) + ")";
    case ExprKind::Constant: {
      const Rational& q = e->value;
      if (q >= 0 && denominator(q) == 1) return literal(q);
      return "(" + print_term(e) + ")";
    }
    case ExprKind::Power: {
      const ExprPtr& b = e->kids[0];
      std::string base = (b->kind == ExprKind::Variable || b->kind == ExprKind::Call)
                             ? print_factor(b)
                             : "(" + print_expr(b) + ")";
      return base + "^" + std::to_string(e->exponent);
    }
    default:
      return "(" + print_expr(e) + ")";
  }
}

std::string print_term(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant: {
      const Rational& q = e->value;
      return (q < 0 ? "-" : "") + literal(q < 0 ? Rational(-q) : q);
    }
    case ExprKind::Product: {
      std::ostringstream os;
      std::size_t i = 0;
      bool bare_minus = false;
      if (e->kids[0]->kind == ExprKind::Constant) {
        Rational c = e->kids[0]->value;
        i = 1;
        if (c < 0) {
          os << "-";
          c = -c;
        }
        if (c != 1 || e->kids.size() == 1) {
          os << literal(c);
          if (e->kids.size() > 1) os << "*";
        } else {
          bare_minus = true;
        }
      }
      for (std::size_t j = i; j < e->kids.size(); ++j) {
        if (j > i) os << "*";
        // After a bare '-', an exponent would rebind to the negated base;
        // parenthesize a leading power to keep the parse identical.
        if (j == i && bare_minus && e->kids[j]->kind == ExprKind::Power) {
          os << "(" << print_factor(e->kids[j]) << ")";
        } else {
          os << print_factor(e->kids[j]);
        }
      }
      return os.str();
    }
    case ExprKind::Quotient: {
      const ExprPtr& n = e->kids[0];
      std::string num = (n->kind == ExprKind::Sum || n->kind == ExprKind::Quotient)
                            ? "(" + print_expr(n) + ")"
                            : print_term(n);
      return num + "/" + print_factor(e->kids[1]);
    }
    case ExprKind::Negate:
      return "-" + print_factor(e->kids[0]);
    case ExprKind::Sum:
      return "(" + print_expr(e) + ")";
    default:
      return print_factor(e);
  }
}

std::string print_expr(const ExprPtr& e) {
  if (e->kind != ExprKind::Sum) return print_term(e);
  std::ostringstream os;
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    const ExprPtr& t = e->kids[i];
    if (i == 0) {
      os << print_term(t);
    } else if (detail::term_is_negative(t)) {
      os << " - " << print_term(detail::negate_term(t));
    } else {
      os << " + " << print_term(t);
    }
  }
  return os.str();
}

}  // namespace

std::string print(const ExprPtr& e) { return print_expr(e); }

}  // namespace walkerlie
