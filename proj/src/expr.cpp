#include "walkerlie/expr.hpp"

#include <cmath>
#include <stdexcept>

#include "expr_internal.hpp"

namespace walkerlie {

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Exp: return "exp";
    case Fn::Log: return "log";
  }
  return "?";
}

ExprPtr Expr::make_constant(Rational q) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Constant;
  e->value = std::move(q);
  return e;
}

ExprPtr Expr::make_variable(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Variable;
  e->name = std::move(name);
  return e;
}

ExprPtr constant(const Rational& q) { return Expr::make_constant(q); }
ExprPtr constant(long long n) { return Expr::make_constant(Rational(n)); }

ExprPtr variable(const Chart& chart, const std::string& name) {
  if (!chart.index_of(name)) throw UnknownIdentifierError(name, 0);
  return Expr::make_variable(name);
}

static ExprPtr make_nary(ExprKind k, std::vector<ExprPtr> kids) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->kids = std::move(kids);
  return e;
}

ExprPtr sum(std::vector<ExprPtr> terms) {
  if (terms.empty()) return constant(0);
  if (terms.size() == 1) return terms[0];
  return make_nary(ExprKind::Sum, std::move(terms));
}

ExprPtr sum(const ExprPtr& a, const ExprPtr& b) { return sum(std::vector<ExprPtr>{a, b}); }

ExprPtr difference(const ExprPtr& a, const ExprPtr& b) { return sum(a, negate(b)); }

ExprPtr product(std::vector<ExprPtr> factors) {
  if (factors.empty()) return constant(1);
  if (factors.size() == 1) return factors[0];
  return make_nary(ExprKind::Product, std::move(factors));
}

ExprPtr product(const ExprPtr& a, const ExprPtr& b) { return product(std::vector<ExprPtr>{a, b}); }

ExprPtr quotient(const ExprPtr& num, const ExprPtr& den) {
  return make_nary(ExprKind::Quotient, {num, den});
}

ExprPtr negate(const ExprPtr& e) { return make_nary(ExprKind::Negate, {e}); }

ExprPtr power(const ExprPtr& base, int exponent) {
  if (exponent == 0) throw std::invalid_argument("zero exponent");
  if (exponent == 1) return base;
  auto e = make_nary(ExprKind::Power, {base});
  const_cast<Expr*>(e.get())->exponent = exponent;
  return e;
}

ExprPtr call(Fn f, const ExprPtr& arg) {
  auto e = make_nary(ExprKind::Call, {arg});
  const_cast<Expr*>(e.get())->fn = f;
  return e;
}

ExprPtr scale(const Rational& q, const ExprPtr& e) { return product(constant(q), e); }

bool is_constant(const ExprPtr& e) { return e->kind == ExprKind::Constant; }

bool is_constant(const ExprPtr& e, const Rational& q) {
  return e->kind == ExprKind::Constant && e->value == q;
}

int compare(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return 0;
  auto rank = [](ExprKind k) {
    switch (k) {
      case ExprKind::Constant: return 0;
      case ExprKind::Variable: return 1;
      case ExprKind::Call: return 2;
      case ExprKind::Power: return 3;
      case ExprKind::Quotient: return 4;
      case ExprKind::Product: return 5;
      case ExprKind::Sum: return 6;
      case ExprKind::Negate: return 7;
    }
    return 8;
  };
  if (rank(a->kind) != rank(b->kind)) return rank(a->kind) < rank(b->kind) ? -1 : 1;
  switch (a->kind) {
    case ExprKind::Constant:
      if (a->value == b->value) return 0;
      return a->value < b->value ? -1 : 1;
    case ExprKind::Variable:
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case ExprKind::Call:
      if (a->fn != b->fn) return static_cast<int>(a->fn) < static_cast<int>(b->fn) ? -1 : 1;
      return compare(a->kids[0], b->kids[0]);
    case ExprKind::Power: {
      int c = compare(a->kids[0], b->kids[0]);
      if (c != 0) return c;
      if (a->exponent != b->exponent) return a->exponent < b->exponent ? -1 : 1;
      return 0;
    }
    default: {
      std::size_t n = std::min(a->kids.size(), b->kids.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a->kids[i], b->kids[i]);
        if (c != 0) return c;
      }
      if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
      return 0;
    }
  }
}

bool equal(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }

std::uint64_t structural_hash(const ExprPtr& e) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(e->kind));
  switch (e->kind) {
    case ExprKind::Constant: {
      for (char c : to_string(e->value)) mix(static_cast<std::uint64_t>(c));
      break;
    }
    case ExprKind::Variable:
      for (char c : e->name) mix(static_cast<std::uint64_t>(c));
      break;
    case ExprKind::Power:
      mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(e->exponent)));
      break;
    case ExprKind::Call:
      mix(static_cast<std::uint64_t>(e->fn));
      break;
    default:
      break;
  }
  for (const auto& k : e->kids) mix(structural_hash(k));
  return h;
}

static void collect_vars(const ExprPtr& e, std::set<std::string>& out) {
  if (e->kind == ExprKind::Variable) out.insert(e->name);
  for (const auto& k : e->kids) collect_vars(k, out);
}

std::set<std::string> free_variables(const ExprPtr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

double evaluate(const ExprPtr& e, const Point& p) {
  switch (e->kind) {
    case ExprKind::Constant:
      return to_double(e->value);
    case ExprKind::Variable:
      if (!p.has(e->name)) throw EvalError("unbound variable", e->name);
      return p.at(e->name);
    case ExprKind::Sum: {
      double v = 0;
      for (const auto& k : e->kids) v += evaluate(k, p);
      return v;
    }
    case ExprKind::Product: {
      double v = 1;
      for (const auto& k : e->kids) v *= evaluate(k, p);
      return v;
    }
    case ExprKind::Power: {
      double b = evaluate(e->kids[0], p);
      if (b == 0.0 && e->exponent < 0) throw EvalError("division by zero", print(e));
      return std::pow(b, e->exponent);
    }
    case ExprKind::Quotient: {
      double num = evaluate(e->kids[0], p);
      double den = evaluate(e->kids[1], p);
      if (den == 0.0) throw EvalError("division by zero", print(e));
      return num / den;
    }
    case ExprKind::Negate:
      return -evaluate(e->kids[0], p);
    case ExprKind::Call: {
      double u = evaluate(e->kids[0], p);
      switch (e->fn) {
        case Fn::Sin: return std::sin(u);
        case Fn::Cos: return std::cos(u);
        case Fn::Exp: return std::exp(u);
        case Fn::Log:
          if (u <= 0.0) throw EvalError("log of non-positive value", print(e));
          return std::log(u);
      }
      break;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

std::optional<Rational> constant_value(const ExprPtr& e) {
  ExprPtr s = simplify(e);
  if (s->kind == ExprKind::Constant) return s->value;
  return std::nullopt;
}

}  // namespace walkerlie
