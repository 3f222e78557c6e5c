#include <algorithm>
#include <map>
#include <vector>

#include "expr_internal.hpp"
#include "walkerlie/expr.hpp"

// Canonical form after simplify:
//   - no Negate nodes; signs live in leading rational coefficients
//   - sums and products are flat, children sorted, constants folded
//   - identical monomials in sums are collected
//   - quotients are lifted to the top of each term, denominator kept
//     constant-free; no cancellation between numerator and denominator
// The printer and parser agree with this form token for token.

namespace walkerlie {

namespace {

bool is_const_kind(const ExprPtr& e) { return e->kind == ExprKind::Constant; }

Rational pow_rational(const Rational& b, int k) {
  Rational base = k < 0 ? Rational(1) / b : b;
  int n = k < 0 ? -k : k;
  Rational acc(1);
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

struct ExprLess {
  bool operator()(const ExprPtr& a, const ExprPtr& b) const { return compare(a, b) < 0; }
};

ExprPtr raw_product(std::vector<ExprPtr> kids) {
  if (kids.empty()) return constant(1);
  if (kids.size() == 1) return kids[0];
  return product(std::move(kids));
}

// (coefficient, constant-free core); core == nullptr encodes the term 1.
struct TermParts {
  Rational coeff;
  ExprPtr core;
};

TermParts split_term(const ExprPtr& t) {
  if (t->kind == ExprKind::Constant) return {t->value, nullptr};
  if (t->kind == ExprKind::Product && is_const_kind(t->kids[0])) {
    std::vector<ExprPtr> rest(t->kids.begin() + 1, t->kids.end());
    return {t->kids[0]->value, raw_product(std::move(rest))};
  }
  if (t->kind == ExprKind::Quotient) {
    TermParts top = split_term(t->kids[0]);
    ExprPtr num_core = top.core ? top.core : constant(1);
    return {top.coeff, quotient(num_core, t->kids[1])};
  }
  return {Rational(1), t};
}

ExprPtr join_term(const Rational& coeff, const ExprPtr& core) {
  if (!core) return constant(coeff);
  if (core->kind == ExprKind::Quotient) {
    const ExprPtr& n = core->kids[0];
    ExprPtr new_num = is_constant(n, 1) ? constant(coeff) : join_term(coeff, n);
    return quotient(new_num, core->kids[1]);
  }
  if (coeff == 1) return core;
  if (core->kind == ExprKind::Product) {
    std::vector<ExprPtr> kids;
    kids.reserve(core->kids.size() + 1);
    kids.push_back(constant(coeff));
    kids.insert(kids.end(), core->kids.begin(), core->kids.end());
    return product(std::move(kids));
  }
  return product(constant(coeff), core);
}

ExprPtr rebuild_side(const Rational& coeff, bool use_coeff, std::vector<ExprPtr> factors) {
  std::sort(factors.begin(), factors.end(), ExprLess{});
  if (use_coeff && coeff != 1) {
    return join_term(coeff, raw_product(std::move(factors)));
  }
  return raw_product(std::move(factors));
}

// Combined canonicalization of Product and Quotient nodes: collect factors
// on each side, fold constants into one coefficient, merge same-base powers.
ExprPtr canonical_product(std::vector<ExprPtr> num_in, std::vector<ExprPtr> den_in) {
  Rational coeff(1);
  std::vector<ExprPtr> num, den;
  bool zero_denominator = false;

  auto absorb = [&](auto&& self, const ExprPtr& e, bool to_num) -> void {
    if (e->kind == ExprKind::Product) {
      for (const auto& k : e->kids) self(self, k, to_num);
    } else if (e->kind == ExprKind::Quotient) {
      self(self, e->kids[0], to_num);
      self(self, e->kids[1], !to_num);
    } else if (e->kind == ExprKind::Constant) {
      if (to_num) {
        coeff *= e->value;
      } else if (e->value == 0) {
        zero_denominator = true;  // left in place; evaluation reports the error
        den.push_back(e);
      } else {
        coeff /= e->value;
      }
    } else {
      (to_num ? num : den).push_back(e);
    }
  };
  for (const auto& e : num_in) absorb(absorb, e, true);
  for (const auto& e : den_in) absorb(absorb, e, false);

  auto merge_powers = [](std::vector<ExprPtr>& side) {
    std::map<ExprPtr, int, ExprLess> bases;
    std::vector<ExprPtr> kept;
    for (const auto& f : side) {
      if (f->kind == ExprKind::Power) {
        bases[f->kids[0]] += f->exponent;
      } else if (f->kind == ExprKind::Constant) {
        kept.push_back(f);  // only the zero-denominator sentinel lands here
      } else {
        bases[f] += 1;
      }
    }
    for (const auto& [base, exp] : bases) {
      if (exp == 0) continue;
      kept.push_back(exp == 1 ? base : power(base, exp));
    }
    side = std::move(kept);
  };
  merge_powers(num);
  merge_powers(den);

  if (coeff == 0 && !zero_denominator) return constant(0);

  if (den.empty()) {
    if (num.empty()) return constant(coeff);
    return rebuild_side(coeff, true, std::move(num));
  }
  ExprPtr num_expr = num.empty() ? constant(coeff) : rebuild_side(coeff, true, std::move(num));
  ExprPtr den_expr = rebuild_side(Rational(1), false, std::move(den));
  return quotient(num_expr, den_expr);
}

struct CoreLess {
  bool operator()(const ExprPtr& a, const ExprPtr& b) const {
    if (!a) return static_cast<bool>(b);
    if (!b) return false;
    return compare(a, b) < 0;
  }
};

ExprPtr canonical_sum(const std::vector<ExprPtr>& terms_in) {
  std::vector<ExprPtr> terms;
  for (const auto& t : terms_in) {
    if (t->kind == ExprKind::Sum) {
      terms.insert(terms.end(), t->kids.begin(), t->kids.end());
    } else {
      terms.push_back(t);
    }
  }
  std::map<ExprPtr, Rational, CoreLess> collected;
  for (const auto& t : terms) {
    TermParts parts = split_term(t);
    collected[parts.core] += parts.coeff;
  }
  std::vector<ExprPtr> out;
  for (const auto& [core, coeff] : collected) {
    if (coeff == 0) continue;
    out.push_back(join_term(coeff, core));
  }
  if (out.empty()) return constant(0);
  if (out.size() == 1) return out[0];
  return sum(std::move(out));
}

}  // namespace

namespace detail {

ExprPtr negate_term(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
      return constant(-e->value);
    case ExprKind::Product: {
      std::vector<ExprPtr> kids = e->kids;
      if (is_const_kind(kids[0])) {
        Rational c = -kids[0]->value;
        if (c == 1) {
          kids.erase(kids.begin());
          return raw_product(std::move(kids));
        }
        kids[0] = constant(c);
        return product(std::move(kids));
      }
      kids.insert(kids.begin(), constant(-1));
      return product(std::move(kids));
    }
    case ExprKind::Quotient:
      return quotient(negate_term(e->kids[0]), e->kids[1]);
    default:
      return product(constant(-1), e);
  }
}

bool term_is_negative(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
      return e->value < 0;
    case ExprKind::Product:
      return is_const_kind(e->kids[0]) && e->kids[0]->value < 0;
    case ExprKind::Quotient:
      return term_is_negative(e->kids[0]);
    default:
      return false;
  }
}

}  // namespace detail

ExprPtr simplify(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
    case ExprKind::Variable:
      return e;
    case ExprKind::Call: {
      ExprPtr arg = simplify(e->kids[0]);
      if (arg.get() == e->kids[0].get()) return e;
      return call(e->fn, arg);
    }
    case ExprKind::Power: {
      ExprPtr base = simplify(e->kids[0]);
      int k = e->exponent;
      if (k == 1) return base;
      if (base->kind == ExprKind::Constant) {
        if (base->value == 0 && k < 0) return power(base, k);  // undefined; kept
        return constant(pow_rational(base->value, k));
      }
      return power(base, k);
    }
    case ExprKind::Negate:
      return detail::negate_term(simplify(e->kids[0]));
    case ExprKind::Quotient:
      return canonical_product({simplify(e->kids[0])}, {simplify(e->kids[1])});
    case ExprKind::Product: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(simplify(k));
      return canonical_product(std::move(kids), {});
    }
    case ExprKind::Sum: {
      std::vector<ExprPtr> kids;
      kids.reserve(e->kids.size());
      for (const auto& k : e->kids) kids.push_back(simplify(k));
      return canonical_sum(kids);
    }
  }
  return e;
}

}  // namespace walkerlie
