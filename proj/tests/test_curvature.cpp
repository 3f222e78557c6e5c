#include <doctest.h>

#include <random>

#include "support/curvature_oracle.hpp"
#include "support/generators.hpp"
#include "walkerlie/curvature.hpp"

using namespace walkerlie;

namespace {

struct Walker3Tensors {
  MetricTensor g;
  InverseMetric gi;
  ConnectionCoefficients conn;
};

Walker3Tensors walker3_tensors(const ExprPtr& f, int eps) {
  MetricTensor g = build_walker3(f, eps);
  InverseMetric gi = invert(g);
  return {g, gi, christoffel(g, gi)};
}

void check_walker3_christoffel(const ExprPtr& f, int eps) {
  Chart c = coordinate_chart(3);
  auto t = walker3_tensors(f, eps);
  ExprPtr f1 = differentiate(f, "x1");
  ExprPtr f2 = differentiate(f, "x2");
  ExprPtr f3 = differentiate(f, "x3");

  auto expect = [&](int k, int i, int j, const ExprPtr& want) {
    ZeroResult r = is_zero(difference(t.conn.at(k, i, j), want));
    INFO("Gamma^", k + 1, "_{", i + 1, j + 1, "} = ", print(t.conn.at(k, i, j)),
         " expected ", print(want));
    CHECK(r.zero);
  };
  expect(0, 0, 2, scale(Rational(1, 2), f1));
  expect(0, 1, 2, scale(Rational(1, 2), f2));
  expect(0, 2, 2, scale(Rational(1, 2), sum(product(f, f1), f3)));
  expect(1, 2, 2, scale(Rational(-eps, 2), f2));
  expect(2, 2, 2, scale(Rational(-1, 2), f1));

  // Everything else vanishes.
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        bool named = (k == 0 && i == 0 && j == 2) || (k == 0 && i == 1 && j == 2) ||
                     (k == 0 && i == 2 && j == 2) || (k == 1 && i == 2 && j == 2) ||
                     (k == 2 && i == 2 && j == 2);
        if (named) continue;
        INFO("Gamma^", k + 1, "_{", i + 1, j + 1, "}");
        CHECK(is_zero(t.conn.at(k, i, j)).zero);
      }
}

}  // namespace

TEST_CASE("Christoffel symbols of the rank-1 form") {
  Chart c = coordinate_chart(3);
  std::mt19937_64 rng(11);
  check_walker3_christoffel(parse("x2^2", c), 1);
  check_walker3_christoffel(parse("x1^2 + x2*x3", c), -1);
  check_walker3_christoffel(parse("sin(x2) + x3", c), 1);
  for (int trial = 0; trial < 4; ++trial) {
    check_walker3_christoffel(testutil::random_polynomial(c, 3, rng), trial % 2 ? 1 : -1);
  }
  // Flat case: every symbol vanishes.
  auto flat = walker3_tensors(constant(0), 1);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(is_constant(flat.conn.at(k, i, j), 0));
}

TEST_CASE("Christoffel symbols of the rank-2 form") {
  Chart c = coordinate_chart(4);
  ExprPtr a = parse("x1*x3 + x4^2", c);
  ExprPtr b = parse("x2^2*x4", c);
  ExprPtr cc = parse("x1*x2*x3", c);
  MetricTensor g = build_walker4(a, b, cc);
  ConnectionCoefficients conn = christoffel(g, invert(g));
  for (int i : {0, 1}) {
    ExprPtr ai = differentiate(a, g.chart.name(i));
    ExprPtr ci = differentiate(cc, g.chart.name(i));
    CHECK(is_zero(difference(conn.at(0, i, 2), scale(Rational(1, 2), ai))).zero);
    CHECK(is_zero(difference(conn.at(1, i, 2), scale(Rational(1, 2), ci))).zero);
  }
  // The (2,4) family pairs with the second dual coordinate: the entries
  // read off the x2-derivatives of the row (c, b), checked against the
  // finite-difference oracle in the last test case of this file.
  ExprPtr b2 = differentiate(b, "x2");
  ExprPtr c2 = differentiate(cc, "x2");
  CHECK(is_zero(difference(conn.at(0, 1, 3), scale(Rational(1, 2), c2))).zero);
  CHECK(is_zero(difference(conn.at(1, 1, 3), scale(Rational(1, 2), b2))).zero);
}

TEST_CASE("Riemann tensor facts") {
  Chart c3 = coordinate_chart(3);
  std::mt19937_64 rng(17);

  auto flat = walker3_tensors(constant(0), 1);
  RiemannTensor r_flat = riemann(flat.conn);
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(is_constant(r_flat.at(l, k, i, j), 0));

  // R^l_{1k1} = 0 for the rank-1 form, any profile function.
  for (int trial = 0; trial < 3; ++trial) {
    auto t = walker3_tensors(testutil::random_polynomial(c3, 3, rng), trial % 2 ? 1 : -1);
    RiemannTensor r = riemann(t.conn);
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k) CHECK(is_zero(r.at(l, 0, k, 0)).zero);
  }
}

TEST_CASE("quadratic dependence on the own dual coordinate is flat, on the cross dual is not") {
  Chart c = coordinate_chart(4);
  // a = x3^2 admits the substitution x1 -> x1 + x3^3/6 to the flat form.
  MetricTensor g_own = build_walker4(parse("x3^2", c), constant(0), constant(0));
  RiemannTensor r_own = riemann(christoffel(g_own, invert(g_own)));
  bool any_nonzero = false;
  for (int l = 0; l < 4 && !any_nonzero; ++l)
    for (int k = 0; k < 4 && !any_nonzero; ++k)
      for (int i = 0; i < 4 && !any_nonzero; ++i)
        for (int j = 0; j < 4 && !any_nonzero; ++j)
          any_nonzero = !is_zero(r_own.at(l, k, i, j)).zero;
  CHECK_FALSE(any_nonzero);

  // a = x4^2 is Ricci-flat but genuinely curved.
  MetricTensor g_cross = build_walker4(parse("x4^2", c), constant(0), constant(0));
  RiemannTensor r_cross = riemann(christoffel(g_cross, invert(g_cross)));
  any_nonzero = false;
  for (int l = 0; l < 4 && !any_nonzero; ++l)
    for (int k = 0; k < 4 && !any_nonzero; ++k)
      for (int i = 0; i < 4 && !any_nonzero; ++i)
        for (int j = 0; j < 4 && !any_nonzero; ++j)
          any_nonzero = !is_zero(r_cross.at(l, k, i, j)).zero;
  CHECK(any_nonzero);
  RicciTensor ric_cross = ricci(r_cross);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(is_zero(ric_cross.components[i][j]).zero);
}

TEST_CASE("Ricci tensor of the rank-1 form") {
  Chart c = coordinate_chart(3);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 4; ++trial) {
    int eps = trial % 2 ? 1 : -1;
    ExprPtr f = testutil::random_polynomial(c, 3, rng);
    auto t = walker3_tensors(f, eps);
    RicciTensor ric = ricci(riemann(t.conn));
    ExprPtr f11 = differentiate(differentiate(f, "x1"), "x1");
    ExprPtr f12 = differentiate(differentiate(f, "x1"), "x2");
    ExprPtr f22 = differentiate(differentiate(f, "x2"), "x2");
    auto expect = [&](int i, int j, const ExprPtr& want) {
      INFO("Ric_{", i + 1, j + 1, "} = ", print(ric.components[i][j]), " want ", print(want));
      CHECK(is_zero(difference(ric.components[i][j], want)).zero);
    };
    expect(0, 2, scale(Rational(1, 2), f11));
    expect(1, 2, scale(Rational(1, 2), f12));
    expect(2, 2, scale(Rational(1, 2), difference(product(f, f11), scale(Rational(eps), f22))));
    expect(0, 0, constant(0));
    expect(0, 1, constant(0));
    expect(1, 1, constant(0));
  }

  // f = x2^2, eps = 1: Ric = -1 dx3^2 and the first row vanishes.
  auto t = walker3_tensors(parse("x2^2", c), 1);
  RicciTensor ric = ricci(riemann(t.conn));
  CHECK(print(ric.components[2][2]) == "-1");
  for (int j = 0; j < 3; ++j) CHECK(is_constant(ric.components[0][j], 0));
}

TEST_CASE("scalar curvature formulas") {
  Chart c3 = coordinate_chart(3);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 3; ++trial) {
    ExprPtr f = testutil::random_polynomial(c3, 3, rng);
    auto t = walker3_tensors(f, trial % 2 ? 1 : -1);
    ExprPtr scal = scalar_curvature(ricci(riemann(t.conn)), t.gi);
    ExprPtr f11 = differentiate(differentiate(f, "x1"), "x1");
    CHECK(is_zero(difference(scal, f11)).zero);
  }

  Chart c4 = coordinate_chart(4);
  ExprPtr a = parse("x1^2*x3", c4);
  ExprPtr b = parse("x2^2 + x4", c4);
  ExprPtr cc = parse("x1*x2", c4);
  MetricTensor g4 = build_walker4(a, b, cc);
  InverseMetric gi4 = invert(g4);
  ExprPtr scal4 = scalar_curvature(ricci(riemann(christoffel(g4, gi4))), gi4);
  ExprPtr want = simplify(sum({differentiate(differentiate(a, "x1"), "x1"),
                               differentiate(differentiate(b, "x2"), "x2"),
                               scale(Rational(2), differentiate(differentiate(cc, "x1"), "x2"))}));
  CHECK(is_zero(difference(scal4, want)).zero);

  // kappa x1^2 + phi(x2,x3) has scalar curvature 2 kappa.
  ExprPtr fk = parse("3*x1^2 + sin(x2) + x3", c3);
  auto tk = walker3_tensors(fk, 1);
  ExprPtr scal_k = scalar_curvature(ricci(riemann(tk.conn)), tk.gi);
  CHECK(print(scal_k) == "6");
}

TEST_CASE("curvature invariants") {
  Chart c = coordinate_chart(3);

  InvariantsReport flat = curvature_invariants(build_walker3(constant(0), 1));
  CHECK(is_constant(flat.scal, 0));
  CHECK(is_constant(flat.ricci_squared, 0));
  CHECK(is_constant(flat.kretschmann, 0));

  // Strict profiles have vanishing scalar invariants.
  InvariantsReport strict = curvature_invariants(build_walker3(parse("x2^3 + x2*x3", c), 1));
  CHECK(is_zero(strict.scal).zero);
  CHECK(is_zero(strict.ricci_squared).zero);
  CHECK(is_zero(strict.kretschmann).zero);

  InvariantsReport trig = curvature_invariants(build_walker3(parse("sin(x2) + x3", c), -1));
  CHECK(is_zero(trig.scal).zero);
  CHECK(is_zero(trig.ricci_squared).zero);
  CHECK(is_zero(trig.kretschmann).zero);

  InvariantsReport curved = curvature_invariants(build_walker3(parse("x1^2", c), 1));
  CHECK(print(curved.scal) == "2");
}

TEST_CASE("Ricci kernel of the canonical distribution") {
  Chart c3 = coordinate_chart(3);
  Chart c4 = coordinate_chart(4);
  std::mt19937_64 rng(31);

  // Strict profiles: the canonical distribution sits in the Ricci kernel.
  Chart strict3({"x2", "x3"});
  for (int trial = 0; trial < 6; ++trial) {
    MetricTensor g = build_walker3(testutil::random_polynomial(strict3, 3, rng), trial % 2 ? 1 : -1);
    Distribution d = Distribution::create(c3, {coordinate_field(c3, 0)}, 1, true);
    Verdict v = ricci_kernel_check(g, d);
    CHECK(v.value);
    CHECK(v.confidence == Confidence::Exact);
  }
  Chart strict4({"x3", "x4"});
  for (int trial = 0; trial < 6; ++trial) {
    MetricTensor g = build_walker4(testutil::random_polynomial(strict4, 2, rng),
                                   testutil::random_polynomial(strict4, 2, rng),
                                   testutil::random_polynomial(strict4, 2, rng));
    Distribution d =
        Distribution::create(c4, {coordinate_field(c4, 0), coordinate_field(c4, 1)}, 2, true);
    Verdict v = ricci_kernel_check(g, d);
    CHECK(v.value);
    CHECK(v.confidence == Confidence::Exact);
  }

  // Profiles depending on the null coordinates leave the kernel: for
  // f = x1^2 the Ricci tensor picks up the dx1 o dx3 component f_11.
  {
    MetricTensor g = build_walker3(parse("x1^2", c3), 1);
    Distribution d = Distribution::create(c3, {coordinate_field(c3, 0)}, 1, true);
    Verdict v = ricci_kernel_check(g, d);
    CHECK_FALSE(v.value);
  }

  MetricTensor g = build_walker3(parse("x2^2", c3), 1);
  Distribution d3 = Distribution::create(c3, {coordinate_field(c3, 2)}, 1);
  Verdict v = ricci_kernel_check(g, d3);
  CHECK_FALSE(v.value);
}

TEST_CASE("curvature identities as properties") {
  Chart c3 = coordinate_chart(3);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 2; ++trial) {
    ExprPtr f = testutil::random_polynomial(c3, 3, rng);
    auto t = walker3_tensors(f, trial % 2 ? 1 : -1);
    RiemannTensor r = riemann(t.conn);
    int n = 3;
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            CHECK(is_zero(sum(r.at(l, k, i, j), r.at(l, k, j, i))).zero);
            CHECK(is_zero(sum({r.at(l, k, i, j), r.at(l, i, j, k), r.at(l, j, k, i)})).zero);
          }
    // Metric compatibility: d_k g_ij - Gamma^l_{ki} g_lj - Gamma^l_{kj} g_il = 0.
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<ExprPtr> terms;
          terms.push_back(differentiate(t.g.components[i][j], c3.name(k)));
          for (int l = 0; l < n; ++l) {
            terms.push_back(negate(product(t.conn.at(l, k, i), t.g.components[l][j])));
            terms.push_back(negate(product(t.conn.at(l, k, j), t.g.components[i][l])));
          }
          CHECK(is_zero(sum(std::move(terms))).zero);
        }
  }
}

TEST_CASE("symbolic tensors agree with the finite-difference oracle") {
  Chart c3 = coordinate_chart(3);
  std::mt19937_64 rng(43);
  ExprPtr f = parse("x1^2 + x2*x3 + sin(x2)", c3);
  MetricTensor g = build_walker3(f, 1);
  ConnectionCoefficients conn = christoffel(g, invert(g));

  for (int pt = 0; pt < 100; ++pt) {
    Point p = testutil::random_point(c3, rng, -1.0, 1.0);
    auto oracle = testutil::oracle_christoffel(g, p);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double sym = evaluate(conn.at(k, i, j), p);
          CHECK(std::abs(sym - oracle[k][i][j]) < 1e-5);
        }
  }

  RiemannTensor r = riemann(conn);
  RicciTensor ric = ricci(r);
  for (int pt = 0; pt < 5; ++pt) {
    Point p = testutil::random_point(c3, rng, -1.0, 1.0);
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            double sym = evaluate(r.at(l, k, i, j), p);
            double num = testutil::oracle_riemann(g, p, l, k, i, j);
            CHECK(std::abs(sym - num) < 1e-5);
          }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double sym = evaluate(ric.components[i][j], p);
        double num = 0;
        for (int k = 0; k < 3; ++k) num += testutil::oracle_riemann(g, p, k, i, k, j);
        CHECK(std::abs(sym - num) < 1e-5);
      }
  }
}
