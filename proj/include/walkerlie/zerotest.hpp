#pragma once

#include <cstdint>
#include <optional>

#include "walkerlie/expr.hpp"

namespace walkerlie {

/// How a verdict was reached. Exact verdicts come from rational-function
/// normalization; Probabilistic from randomized evaluation; Sampled marks
/// properties checked on a finite sample of a continuum of cases.
enum class Confidence { Exact, Probabilistic, Sampled };

const char* confidence_name(Confidence c);

/// Weakest of two confidences (Exact < Probabilistic < Sampled).
Confidence weaker(Confidence a, Confidence b);

struct ZeroContext {
  int samples = 32;
  double tol = 1e-9;
  std::uint64_t seed = 42;
};

struct ZeroResult {
  bool zero = false;
  Confidence confidence = Confidence::Exact;
  std::optional<Point> witness;  // present on most non-zero verdicts
};

/// Decides whether the expression vanishes identically.
///
/// Expressions built from rationals, variables, +, *, ^, / are expanded to a
/// multivariate rational normal form and decided exactly. Expressions
/// containing sin/cos/exp/log are evaluated at ctx.samples random points in
/// [-2,2]^n (resampling away from singular points); an all-zero sample gives
/// a Probabilistic true, the first nonzero point a witness.
ZeroResult is_zero(const ExprPtr& e, const ZeroContext& ctx = {});

/// Exact rational value when the expression is a constant rational
/// function (e.g. quotients that cancel); nullopt otherwise.
std::optional<Rational> ratfunc_constant(const ExprPtr& e);

/// True when the expression is free of sin/cos/exp/log, i.e. eligible for
/// an exact verdict.
bool is_rational_expr(const ExprPtr& e);

}  // namespace walkerlie
