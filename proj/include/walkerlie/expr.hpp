#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "walkerlie/chart.hpp"
#include "walkerlie/rational.hpp"

namespace walkerlie {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind : std::uint8_t {
  Constant,
  Variable,
  Sum,
  Product,
  Power,
  Quotient,
  Negate,
  Call,
};

enum class Fn : std::uint8_t { Sin, Cos, Exp, Log };

const char* fn_name(Fn f);

/// Immutable expression node. Build through the factory functions below;
/// all operations on expressions are pure.
class Expr {
 public:
  ExprKind kind;
  Rational value;             // Constant
  std::string name;           // Variable
  int exponent = 0;           // Power (nonzero integer)
  Fn fn = Fn::Sin;            // Call
  std::vector<ExprPtr> kids;  // Sum/Product: n-ary; Power/Negate/Call: 1; Quotient: 2

  static ExprPtr make_constant(Rational q);
  static ExprPtr make_variable(std::string name);
};

// --- factories ---------------------------------------------------------

ExprPtr constant(const Rational& q);
ExprPtr constant(long long n);
ExprPtr variable(const Chart& chart, const std::string& name);  // throws on unknown name
ExprPtr sum(std::vector<ExprPtr> terms);
ExprPtr sum(const ExprPtr& a, const ExprPtr& b);
ExprPtr difference(const ExprPtr& a, const ExprPtr& b);
ExprPtr product(std::vector<ExprPtr> factors);
ExprPtr product(const ExprPtr& a, const ExprPtr& b);
ExprPtr quotient(const ExprPtr& num, const ExprPtr& den);
ExprPtr negate(const ExprPtr& e);
ExprPtr power(const ExprPtr& base, int exponent);  // throws on exponent 0
ExprPtr call(Fn f, const ExprPtr& arg);
ExprPtr scale(const Rational& q, const ExprPtr& e);

bool is_constant(const ExprPtr& e);
bool is_constant(const ExprPtr& e, const Rational& q);

// --- structure ---------------------------------------------------------

/// Total deterministic order; 0 iff structurally equal.
int compare(const ExprPtr& a, const ExprPtr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
std::uint64_t structural_hash(const ExprPtr& e);
std::set<std::string> free_variables(const ExprPtr& e);

// --- core operations ---------------------------------------------------

/// Canonical form. Fixed rule set: flatten sums/products, fold rational
/// constants, collapse power 1 and collect same-base factors, collect
/// identical monomials in sums, lift quotients to the top of each term.
/// No factoring, no expansion. Idempotent.
ExprPtr simplify(const ExprPtr& e);

/// Grammar-conforming rendering; parsing the result of print on a
/// simplified expression reproduces that expression node for node.
std::string print(const ExprPtr& e);

/// Exact partial derivative with respect to the named coordinate,
/// returned in canonical form.
ExprPtr differentiate(const ExprPtr& e, const std::string& var);

/// Replaces every occurrence of the named variable, then simplifies.
ExprPtr substitute(const ExprPtr& e, const std::string& var, const ExprPtr& replacement);

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t off) : std::runtime_error(msg), offset(off) {}
};

struct UnknownIdentifierError : ParseError {
  std::string identifier;
  UnknownIdentifierError(const std::string& ident, std::size_t off)
      : ParseError("unknown identifier '" + ident + "'", off), identifier(ident) {}
};

/// Recursive-descent parser for
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' INT)?
///   base   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')' | '-' base
/// Functions: sin, cos, exp, log. NUMBER is a decimal literal kept exact.
/// Every other identifier must be a chart coordinate.
ExprPtr parse(const std::string& text, const Chart& chart);

struct EvalError : std::runtime_error {
  std::string subexpression;
  EvalError(const std::string& msg, std::string subexpr)
      : std::runtime_error(msg + " in '" + subexpr + "'"), subexpression(std::move(subexpr)) {}
};

/// Numeric value at a point. Throws EvalError for log of a non-positive
/// argument or division by zero, naming the offending subexpression.
double evaluate(const ExprPtr& e, const Point& p);

/// Exact rational value if the expression folds to a constant.
std::optional<Rational> constant_value(const ExprPtr& e);

}  // namespace walkerlie
