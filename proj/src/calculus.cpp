#include <vector>

#include "walkerlie/expr.hpp"

namespace walkerlie {

namespace {

ExprPtr diff_raw(const ExprPtr& e, const std::string& var) {
  switch (e->kind) {
    case ExprKind::Constant:
      return constant(0);
    case ExprKind::Variable:
      return constant(e->name == var ? 1 : 0);
    case ExprKind::Sum: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(diff_raw(k, var));
      return sum(std::move(kids));
    }
    case ExprKind::Product: {
      std::vector<ExprPtr> terms;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        std::vector<ExprPtr> factors = e->kids;
        factors[i] = diff_raw(e->kids[i], var);
        terms.push_back(product(std::move(factors)));
      }
      return sum(std::move(terms));
    }
    case ExprKind::Power: {
      const ExprPtr& b = e->kids[0];
      ExprPtr db = diff_raw(b, var);
      int k = e->exponent;
      std::vector<ExprPtr> factors{constant(k)};
      if (k != 1 && k - 1 != 0) factors.push_back(power(b, k - 1));
      factors.push_back(db);
      return product(std::move(factors));
    }
    case ExprKind::Quotient: {
      const ExprPtr& a = e->kids[0];
      const ExprPtr& b = e->kids[1];
      ExprPtr num = difference(product(diff_raw(a, var), b), product(a, diff_raw(b, var)));
      return quotient(num, power(b, 2));
    }
    case ExprKind::Negate:
      return negate(diff_raw(e->kids[0], var));
    case ExprKind::Call: {
      const ExprPtr& u = e->kids[0];
      ExprPtr du = diff_raw(u, var);
      switch (e->fn) {
        case Fn::Sin: return product(call(Fn::Cos, u), du);
        case Fn::Cos: return negate(product(call(Fn::Sin, u), du));
        case Fn::Exp: return product(call(Fn::Exp, u), du);
        case Fn::Log: return quotient(du, u);
      }
      break;
    }
  }
  return constant(0);
}

ExprPtr subst_raw(const ExprPtr& e, const std::string& var, const ExprPtr& replacement) {
  if (e->kind == ExprKind::Variable) return e->name == var ? replacement : e;
  if (e->kids.empty()) return e;
  std::vector<ExprPtr> kids;
  kids.reserve(e->kids.size());
  bool changed = false;
  for (const auto& k : e->kids) {
    ExprPtr nk = subst_raw(k, var, replacement);
    changed = changed || nk.get() != k.get();
    kids.push_back(nk);
  }
  if (!changed) return e;
  auto node = std::make_shared<Expr>(*e);
  node->kids = std::move(kids);
  return node;
}

}  // namespace

ExprPtr differentiate(const ExprPtr& e, const std::string& var) {
  return simplify(diff_raw(e, var));
}

ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement) {
  return simplify(subst_raw(e, var, replacement));
}

}  // namespace walkerlie
