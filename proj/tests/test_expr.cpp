#include <doctest.h>

#include <random>

#include "support/generators.hpp"
#include "walkerlie/expr.hpp"
#include "walkerlie/zerotest.hpp"

using namespace walkerlie;

static Chart chart3() { return Chart({"x1", "x2", "x3"}); }

TEST_CASE("parse builds the expected trees") {
  Chart c = chart3();

  ExprPtr e = parse("x1^2 + sin(x2)", c);
  REQUIRE(e->kind == ExprKind::Sum);
  REQUIRE(e->kids.size() == 2);
  CHECK(e->kids[0]->kind == ExprKind::Power);
  CHECK(e->kids[0]->kids[0]->name == "x1");
  CHECK(e->kids[0]->exponent == 2);
  CHECK(e->kids[1]->kind == ExprKind::Call);
  CHECK(e->kids[1]->fn == Fn::Sin);

  ExprPtr z = parse("0", c);
  CHECK(is_constant(z, 0));

  ExprPtr q = parse("3.25", c);
  CHECK(is_constant(q, Rational(13, 4)));
}

TEST_CASE("parse reports positions and unknown identifiers") {
  Chart c = chart3();
  try {
    parse("x1 +", c);
    FAIL("expected parse error");
  } catch (const ParseError& err) {
    CHECK(err.offset == 4);
  }
  try {
    parse("x1 + y", c);
    FAIL("expected unknown identifier");
  } catch (const UnknownIdentifierError& err) {
    CHECK(err.identifier == "y");
  }
  CHECK_THROWS_AS(parse("x1^0", c), ParseError);
  CHECK_THROWS_AS(parse("tan(x1)", c), ParseError);
}

TEST_CASE("differentiate table rules") {
  Chart c = chart3();
  CHECK(print(differentiate(parse("x1^2", c), "x1")) == "2*x1");
  CHECK(print(differentiate(parse("sin(x2)", c), "x2")) == "cos(x2)");
  CHECK(print(differentiate(parse("5", c), "x1")) == "0");
  CHECK(print(differentiate(parse("x1^2*x3 + x2", c), "x1")) == "2*x1*x3");
  CHECK(print(differentiate(parse("cos(x1)", c), "x1")) == "-sin(x1)");
  CHECK(print(differentiate(parse("log(x1)", c), "x1")) == "1/x1");
  CHECK(print(differentiate(parse("1/x1", c), "x1")) == "-1/x1^2");
}

TEST_CASE("differentiate agrees with central finite differences") {
  Chart c = chart3();
  std::mt19937_64 rng(2024);
  std::vector<ExprPtr> corpus = {
      parse("x1^2*x3 + x2", c),
      parse("sin(x2)*x3 + exp(x1/2)", c),
      parse("x1^3 - 2*x2^2*x3 + 7", c),
      parse("cos(x1*x2)", c),
      parse("log(2 + x1^2)", c),
  };
  for (const auto& e : corpus) {
    for (const auto& var : c.names()) {
      ExprPtr de = differentiate(e, var);
      for (int i = 0; i < 50; ++i) {
        Point p = testutil::random_point(c, rng);
        double sym = evaluate(de, p);
        double fd = testutil::finite_difference(e, var, p);
        CHECK(testutil::close_rel(sym, fd, 1e-6));
      }
    }
  }
}

TEST_CASE("evaluate values and domain errors") {
  Chart c = chart3();
  Point p({{"x1", 3.0}});
  CHECK(evaluate(parse("x1^2", c), p) == doctest::Approx(9.0));

  Point p0({{"x1", 0.0}});
  CHECK_THROWS_AS(evaluate(parse("1/x1", c), p0), EvalError);
  CHECK_THROWS_AS(evaluate(parse("log(x1)", c), p0), EvalError);

  Point p2({{"x1", 0.0}, {"x2", 5.0}});
  CHECK(evaluate(parse("exp(x1)*x2", c), p2) == doctest::Approx(5.0));
}

TEST_CASE("is_zero verdicts and confidence tags") {
  Chart c = chart3();

  ZeroResult r1 = is_zero(parse("x1 - x1", c));
  CHECK(r1.zero);
  CHECK(r1.confidence == Confidence::Exact);

  ZeroResult r2 = is_zero(parse("sin(x1)^2 + cos(x1)^2 - 1", c));
  CHECK(r2.zero);
  CHECK(r2.confidence == Confidence::Probabilistic);

  ZeroResult r3 = is_zero(parse("x1*x2", c));
  CHECK_FALSE(r3.zero);
  CHECK(r3.confidence == Confidence::Exact);
  REQUIRE(r3.witness.has_value());
  CHECK(r3.witness->at("x1") == doctest::Approx(1.0));
  CHECK(r3.witness->at("x2") == doctest::Approx(1.0));

  // Quotients cancel exactly.
  ZeroResult r4 = is_zero(parse("x1/(x1^2) - 1/x1", c));
  CHECK(r4.zero);
  CHECK(r4.confidence == Confidence::Exact);

  ZeroResult r5 = is_zero(parse("(x1 + x2)^2 - x1^2 - 2*x1*x2 - x2^2", c));
  CHECK(r5.zero);
  CHECK(r5.confidence == Confidence::Exact);
}

TEST_CASE("is_zero on polynomials never relies on sampling") {
  Chart c = chart3();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    ExprPtr p = testutil::random_polynomial(c, 3, rng);
    ZeroResult r = is_zero(p);
    CHECK(r.confidence == Confidence::Exact);
    ZeroResult rr = is_zero(difference(p, p));
    CHECK(rr.zero);
    CHECK(rr.confidence == Confidence::Exact);
  }
}

TEST_CASE("print/parse/simplify round trip") {
  Chart c = chart3();
  std::vector<std::string> corpus = {
      "x1^2 + sin(x2)",
      "x1 - x2 - x3",
      "-x1 + 2*x2",
      "3/2*x1*x3",
      "-3/2*x1 + x2^-2",
      "(x1 + x2)*(x1 - x2)",
      "x1/x2",
      "1/2*x1/x2",
      "-x1/(x2*x3)",
      "(x1 + 1)/(x2 - 1)",
      "sin(x1*x2)^3",
      "2 - exp(x1)",
      "x1^2*x2/(x3^2 + 1)",
      "log(x1 + 2)/x2",
  };
  for (const auto& text : corpus) {
    ExprPtr e = parse(text, c);
    ExprPtr s = simplify(e);
    ExprPtr back = parse(print(s), c);
    INFO("text=", text, " printed=", print(s));
    CHECK(equal(back, s));
  }

  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    ExprPtr e = testutil::random_expr(c, 4, rng);
    ExprPtr s = simplify(e);
    ExprPtr back = parse(print(s), c);
    INFO("printed=", print(s));
    CHECK(equal(back, s));
  }
}

TEST_CASE("simplify is idempotent") {
  Chart c = chart3();
  std::mt19937_64 rng(123);
  for (int i = 0; i < 300; ++i) {
    ExprPtr e = testutil::random_expr(c, 4, rng);
    ExprPtr s1 = simplify(e);
    ExprPtr s2 = simplify(s1);
    INFO("s1=", print(s1), " s2=", print(s2));
    CHECK(equal(s1, s2));
  }
}

TEST_CASE("simplify collects monomials and folds constants") {
  Chart c = chart3();
  CHECK(print(simplify(parse("2*x1 + 3*x1", c))) == "5*x1");
  CHECK(print(simplify(parse("x1*x1", c))) == "x1^2");
  CHECK(print(simplify(parse("x1^3*x1^-1", c))) == "x1^2");
  CHECK(print(simplify(parse("x1 + 0", c))) == "x1");
  CHECK(print(simplify(parse("1*x1", c))) == "x1");
  CHECK(print(simplify(parse("0*x2 + 4/2", c))) == "2");
  CHECK(print(simplify(parse("x1/2", c))) == "1/2*x1");
  CHECK(print(simplify(parse("x2 - x2", c))) == "0");
  CHECK(print(simplify(parse("-(x1 - x2)", c))) == "-(x1 - x2)");
}

TEST_CASE("substitute replaces and simplifies") {
  Chart c = chart3();
  ExprPtr e = parse("x1^2 + x2", c);
  ExprPtr s = substitute(e, "x1", constant(3));
  CHECK(print(s) == "9 + x2");
  ExprPtr t = substitute(e, "x2", parse("x1", c));
  CHECK(print(t) == "x1 + x1^2");
}
