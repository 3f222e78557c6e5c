#include "walkerlie/zerotest.hpp"

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace walkerlie {

const char* confidence_name(Confidence c) {
  switch (c) {
    case Confidence::Exact: return "EXACT";
    case Confidence::Probabilistic: return "PROBABILISTIC";
    case Confidence::Sampled: return "SAMPLED";
  }
  return "?";
}

Confidence weaker(Confidence a, Confidence b) {
  return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

namespace {

using Monomial = std::map<std::string, int>;  // variable -> positive exponent

struct Poly {
  std::map<Monomial, Rational> terms;

  static Poly zero() { return {}; }
  static Poly from_const(const Rational& q) {
    Poly p;
    if (q != 0) p.terms[{}] = q;
    return p;
  }
  static Poly from_var(const std::string& name) {
    Poly p;
    p.terms[{{name, 1}}] = 1;
    return p;
  }
  bool is_zero() const { return terms.empty(); }
  bool is_const() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty()); }
  Rational const_value() const { return terms.empty() ? Rational(0) : terms.begin()->second; }
  std::size_t size() const { return terms.size(); }
};

Poly add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms) {
    auto it = out.terms.find(m);
    if (it == out.terms.end()) {
      out.terms[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      Monomial m = ma;
      for (const auto& [v, e] : mb) m[v] += e;
      Rational c = ca * cb;
      auto it = out.terms.find(m);
      if (it == out.terms.end()) {
        out.terms[m] = c;
      } else {
        it->second += c;
        if (it->second == 0) out.terms.erase(it);
      }
    }
  }
  return out;
}

Poly negate(const Poly& a) {
  Poly out = a;
  for (auto& [m, c] : out.terms) c = -c;
  return out;
}

constexpr std::size_t kTermLimit = 200000;

struct Blowup {};

Poly pow_poly(const Poly& a, int k) {
  Poly acc = Poly::from_const(1);
  Poly base = a;
  int n = k;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    if (acc.size() > kTermLimit) throw Blowup{};
    n >>= 1;
    if (n > 0) base = mul(base, base);
    if (base.size() > kTermLimit) throw Blowup{};
  }
  return acc;
}

Rational eval_poly(const Poly& p, const std::map<std::string, Rational>& at) {
  Rational acc(0);
  for (const auto& [m, c] : p.terms) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      Rational x = at.at(v);
      for (int i = 0; i < e; ++i) t *= x;
    }
    acc += t;
  }
  return acc;
}

// num/den with den not identically zero; no gcd cancellation (desk-scale
// inputs), but additions with a shared denominator stay on it.
struct RatFunc {
  Poly num;
  Poly den;
};

bool poly_equal(const Poly& a, const Poly& b) { return a.terms == b.terms; }

RatFunc normalize_const_den(RatFunc r) {
  if (r.den.is_const() && r.den.const_value() != 0 && r.den.const_value() != 1) {
    Rational d = r.den.const_value();
    for (auto& [m, c] : r.num.terms) c /= d;
    r.den = Poly::from_const(1);
  }
  return r;
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  if (poly_equal(a.den, b.den)) return {add(a.num, b.num), a.den};
  RatFunc out{add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den)};
  if (out.num.size() > kTermLimit || out.den.size() > kTermLimit) throw Blowup{};
  return normalize_const_den(out);
}

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  RatFunc out{mul(a.num, b.num), mul(a.den, b.den)};
  if (out.num.size() > kTermLimit || out.den.size() > kTermLimit) throw Blowup{};
  return normalize_const_den(out);
}

struct NotRational {};

RatFunc to_ratfunc(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
      return {Poly::from_const(e->value), Poly::from_const(1)};
    case ExprKind::Variable:
      return {Poly::from_var(e->name), Poly::from_const(1)};
    case ExprKind::Sum: {
      RatFunc acc = to_ratfunc(e->kids[0]);
      for (std::size_t i = 1; i < e->kids.size(); ++i) acc = rf_add(acc, to_ratfunc(e->kids[i]));
      return acc;
    }
    case ExprKind::Product: {
      RatFunc acc = to_ratfunc(e->kids[0]);
      for (std::size_t i = 1; i < e->kids.size(); ++i) acc = rf_mul(acc, to_ratfunc(e->kids[i]));
      return acc;
    }
    case ExprKind::Power: {
      RatFunc b = to_ratfunc(e->kids[0]);
      int k = e->exponent;
      if (k < 0) {
        if (b.num.is_zero()) throw NotRational{};
        std::swap(b.num, b.den);
        k = -k;
      }
      if (k > 64) throw Blowup{};
      return normalize_const_den({pow_poly(b.num, k), pow_poly(b.den, k)});
    }
    case ExprKind::Quotient: {
      RatFunc n = to_ratfunc(e->kids[0]);
      RatFunc d = to_ratfunc(e->kids[1]);
      if (d.num.is_zero()) throw NotRational{};
      RatFunc out{mul(n.num, d.den), mul(n.den, d.num)};
      if (out.num.size() > kTermLimit || out.den.size() > kTermLimit) throw Blowup{};
      return normalize_const_den(out);
    }
    case ExprKind::Negate: {
      RatFunc c = to_ratfunc(e->kids[0]);
      return {negate(c.num), c.den};
    }
    case ExprKind::Call:
      throw NotRational{};
  }
  throw NotRational{};
}

std::optional<Point> exact_witness(const Poly& num, const Poly& den, std::uint64_t seed) {
  std::vector<std::string> vars;
  {
    std::set<std::string> names;
    for (const auto& [m, c] : num.terms)
      for (const auto& [v, e] : m) names.insert(v);
    for (const auto& [m, c] : den.terms)
      for (const auto& [v, e] : m) names.insert(v);
    vars.assign(names.begin(), names.end());
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::map<std::string, Rational> at;
    for (const auto& v : vars) at[v] = Rational(attempt == 0 ? 1 : dist(rng));
    if (eval_poly(den, at) == 0) continue;
    if (eval_poly(num, at) != 0) {
      Point p;
      for (const auto& [v, q] : at) p.set(v, to_double(q));
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_rational_expr(const ExprPtr& e) {
  if (e->kind == ExprKind::Call) return false;
  for (const auto& k : e->kids)
    if (!is_rational_expr(k)) return false;
  return true;
}

std::optional<Rational> ratfunc_constant(const ExprPtr& e) {
  try {
    RatFunc rf = to_ratfunc(simplify(e));
    if (rf.num.is_zero()) return Rational(0);
    if (rf.num.is_const() && rf.den.is_const()) return rf.num.const_value() / rf.den.const_value();
    // Constant rational functions with non-constant denominator: num = c*den.
    Rational c = rf.num.terms.begin()->second;
    auto it = rf.den.terms.find(rf.num.terms.begin()->first);
    if (it == rf.den.terms.end()) return std::nullopt;
    c /= it->second;
    Poly residue = add(rf.num, negate(mul(Poly::from_const(c), rf.den)));
    if (residue.is_zero()) return c;
    return std::nullopt;
  } catch (NotRational&) {
    return std::nullopt;
  } catch (Blowup&) {
    return std::nullopt;
  }
}

ZeroResult is_zero(const ExprPtr& e, const ZeroContext& ctx) {
  ExprPtr s = simplify(e);
  if (s->kind == ExprKind::Constant) {
    if (s->value == 0) return {true, Confidence::Exact, std::nullopt};
    return {false, Confidence::Exact, Point{}};
  }

  bool rational_path_failed = false;
  try {
    RatFunc rf = to_ratfunc(s);
    if (rf.num.is_zero()) return {true, Confidence::Exact, std::nullopt};
    return {false, Confidence::Exact, exact_witness(rf.num, rf.den, ctx.seed ^ structural_hash(s))};
  } catch (NotRational&) {
    rational_path_failed = true;
  } catch (Blowup&) {
    rational_path_failed = true;
  }
  (void)rational_path_failed;

  auto vars = free_variables(s);
  std::mt19937_64 rng(ctx.seed ^ structural_hash(s));
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  int valid = 0;
  int attempts = 0;
  const int max_attempts = ctx.samples * 20;
  while (valid < ctx.samples && attempts < max_attempts) {
    ++attempts;
    Point p;
    for (const auto& v : vars) p.set(v, dist(rng));
    double val;
    try {
      val = evaluate(s, p);
    } catch (const EvalError&) {
      continue;  // singular point; resample
    }
    if (!std::isfinite(val)) continue;
    ++valid;
    if (std::abs(val) > ctx.tol) return {false, Confidence::Probabilistic, p};
  }
  if (valid == 0) return {false, Confidence::Probabilistic, std::nullopt};
  return {true, Confidence::Probabilistic, std::nullopt};
}

}  // namespace walkerlie
