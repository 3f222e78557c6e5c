#pragma once

// Test-side random generators and numeric oracles. Everything here is
// independent of the symbolic code paths it is used to check: derivatives
// are probed with central finite differences over plain evaluate() calls.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "walkerlie/chart.hpp"
#include "walkerlie/expr.hpp"

namespace testutil {

using walkerlie::Chart;
using walkerlie::ExprPtr;
using walkerlie::Point;
using walkerlie::Rational;

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(num(rng), den(rng));
}

/// Random polynomial over the chart, total degree <= max_degree.
inline ExprPtr random_polynomial(const Chart& chart, int max_degree, std::mt19937_64& rng,
                                 int terms = 4) {
  using namespace walkerlie;
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> pick(0, chart.dim() - 1);
  std::vector<ExprPtr> sum_terms;
  for (int t = 0; t < terms; ++t) {
    Rational c = random_rational(rng);
    if (c == 0) c = 1;
    std::vector<ExprPtr> factors{constant(c)};
    int d = deg(rng);
    for (int k = 0; k < d; ++k) factors.push_back(variable(chart, chart.name(pick(rng))));
    sum_terms.push_back(product(std::move(factors)));
  }
  return simplify(sum(std::move(sum_terms)));
}

/// Random expression over the full grammar (log arguments kept positive).
inline ExprPtr random_expr(const Chart& chart, int depth, std::mt19937_64& rng) {
  using namespace walkerlie;
  std::uniform_int_distribution<int> pick(0, chart.dim() - 1);
  if (depth <= 0) {
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) return constant(random_rational(rng));
    return variable(chart, chart.name(pick(rng)));
  }
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0:
      return sum(random_expr(chart, depth - 1, rng), random_expr(chart, depth - 1, rng));
    case 1:
      return product(random_expr(chart, depth - 1, rng), random_expr(chart, depth - 1, rng));
    case 2: {
      int k = std::uniform_int_distribution<int>(-3, 3)(rng);
      if (k == 0) k = 2;
      return power(random_expr(chart, depth - 1, rng), k);
    }
    case 3:
      return quotient(random_expr(chart, depth - 1, rng), random_expr(chart, depth - 1, rng));
    case 4:
      return negate(random_expr(chart, depth - 1, rng));
    case 5:
      return call(Fn::Sin, random_expr(chart, depth - 1, rng));
    case 6:
      return call(Fn::Cos, random_expr(chart, depth - 1, rng));
    default:
      return call(Fn::Exp, random_expr(chart, std::min(depth - 1, 1), rng));
  }
}

inline Point random_point(const Chart& chart, std::mt19937_64& rng, double lo = -2.0,
                          double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Point p;
  for (const auto& n : chart.names()) p.set(n, dist(rng));
  return p;
}

/// Central finite difference of e with respect to var at p.
inline double finite_difference(const ExprPtr& e, const std::string& var, const Point& p,
                                double step = 1e-5) {
  Point hi = p;
  Point lo = p;
  hi.set(var, p.at(var) + step);
  lo.set(var, p.at(var) - step);
  return (walkerlie::evaluate(e, hi) - walkerlie::evaluate(e, lo)) / (2.0 * step);
}

inline bool close_rel(double a, double b, double rel) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace testutil
