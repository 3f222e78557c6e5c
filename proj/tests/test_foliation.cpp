#include <doctest.h>

#include <cmath>

#include "walkerlie/foliation.hpp"

using namespace walkerlie;

namespace {

Chart heis_chart() { return Chart({"u", "v", "w"}); }

MaurerCartanForm heisenberg_form() {
  Chart c = heis_chart();
  std::vector<VectorField> frame;
  frame.emplace_back(c, ExprVector{constant(1), constant(0), constant(0)});
  frame.emplace_back(c, ExprVector{constant(0), constant(1), parse("u", c)});
  frame.emplace_back(c, ExprVector{constant(0), constant(0), constant(1)});
  return build_mc_form(frame, {}, LieAlgebra::heisenberg());
}

MaurerCartanForm closed_coordinate_form() {
  // Coordinate coframe with Heisenberg target: d(omega^3) = 0 misses the
  // bracket term, so the structure equation fails.
  Chart c = heis_chart();
  MaurerCartanForm form{c, LieAlgebra::heisenberg(), {}};
  form.omega = {{constant(1), constant(0), constant(0)},
                {constant(0), constant(1), constant(0)},
                {constant(0), constant(0), constant(1)}};
  return form;
}

Point pt(const Chart& c, std::vector<double> xs) {
  Point p;
  for (int i = 0; i < c.dim(); ++i) p.set(c.name(i), xs[static_cast<std::size_t>(i)]);
  return p;
}

MaurerCartanForm walker3_form(const ExprPtr& f, int eps) {
  MetricTensor g = build_walker3(f, eps);
  std::vector<VectorField> frame{coordinate_field(g.chart, 0)};
  std::vector<VectorField> complement{coordinate_field(g.chart, 1), coordinate_field(g.chart, 2)};
  return build_mc_form(frame, complement, LieAlgebra::abelian(1));
}

}  // namespace

TEST_CASE("coframe construction") {
  Chart c3 = coordinate_chart(3);
  MaurerCartanForm w3 = walker3_form(parse("x2^2", c3), 1);
  CHECK(w3.rank() == 1);
  CHECK(print(w3.omega[0][0]) == "1");
  CHECK(print(w3.omega[0][1]) == "0");
  CHECK(print(w3.omega[0][2]) == "0");

  Chart c4 = coordinate_chart(4);
  std::vector<VectorField> frame{coordinate_field(c4, 0), coordinate_field(c4, 1)};
  std::vector<VectorField> complement{coordinate_field(c4, 2), coordinate_field(c4, 3)};
  MaurerCartanForm w4 = build_mc_form(frame, complement, LieAlgebra::abelian(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) CHECK(print(w4.omega[i][j]) == (i == j ? "1" : "0"));

  MaurerCartanForm heis = heisenberg_form();
  CHECK(print(heis.omega[0][0]) == "1");
  CHECK(print(heis.omega[1][1]) == "1");
  CHECK(print(heis.omega[2][1]) == "-u");
  CHECK(print(heis.omega[2][2]) == "1");

  // Rank-deficient joint frames are rejected.
  Chart c2 = Chart({"x1", "x2"});
  std::vector<VectorField> bad{coordinate_field(c2, 0)};
  std::vector<VectorField> badc{coordinate_field(c2, 0)};
  CHECK_THROWS_AS(build_mc_form(bad, badc, LieAlgebra::abelian(1)), ValidationError);
}

TEST_CASE("structure equation check") {
  Chart c3 = coordinate_chart(3);
  Verdict ok = mc_check(walker3_form(parse("x2^2 + x3", c3), 1));
  CHECK(ok.value);
  CHECK(ok.confidence == Confidence::Exact);

  CHECK(mc_check(heisenberg_form()).value);

  Verdict bad = mc_check(closed_coordinate_form());
  CHECK_FALSE(bad.value);
}

TEST_CASE("representation constructors verify the bracket relations") {
  GroupRepresentation ab = GroupRepresentation::abelian(3);
  CHECK(ab.size == 4);
  GroupRepresentation heis = GroupRepresentation::heisenberg(LieAlgebra::heisenberg());
  CHECK(heis.size == 3);
  GroupRepresentation aff = GroupRepresentation::affine(LieAlgebra::affine_line());
  CHECK(aff.size == 2);

  // Violating matrices are rejected: swap the third generator so the
  // bracket of the first two no longer matches it.
  auto unit3 = [](int i, int j) {
    RatMatrix m(3, RatVector(3, Rational(0)));
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    return m;
  };
  CHECK_THROWS_AS(GroupRepresentation::create(LieAlgebra::heisenberg(), 3,
                                              {unit3(0, 1), unit3(1, 2), unit3(1, 2)}),
                  ValidationError);
}

TEST_CASE("development along segments and closed loops") {
  Chart c3 = coordinate_chart(3);
  MaurerCartanForm form = walker3_form(parse("x2^2", c3), 1);
  GroupRepresentation rep = GroupRepresentation::abelian(1);

  Curve seg = polyline_curve(c3, {pt(c3, {0, 0, 0}), pt(c3, {1, 2, 3})});
  DevelopResult res = develop(form, seg, rep);
  REQUIRE(res.abelian_exact.has_value());
  CHECK((*res.abelian_exact)[0] == 1);
  REQUIRE(res.abelian_log.has_value());
  CHECK((*res.abelian_log)[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.element[0][1] == doctest::Approx(1.0).epsilon(1e-9));

  Curve loop = polyline_curve(
      c3, {pt(c3, {0, 0, 0}), pt(c3, {1, 0, 0}), pt(c3, {1, 1, 0}), pt(c3, {0, 0, 0})});
  DevelopResult res_loop = develop(form, loop, rep);
  REQUIRE(res_loop.abelian_exact.has_value());
  CHECK((*res_loop.abelian_exact)[0] == 0);
  CHECK(res_loop.element[0][0] == doctest::Approx(1.0));
  CHECK(res_loop.element[0][1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("Heisenberg development matches closed forms") {
  MaurerCartanForm form = heisenberg_form();
  GroupRepresentation rep = GroupRepresentation::heisenberg(LieAlgebra::heisenberg());
  Chart c = heis_chart();

  // Straight segment (0,0,0) -> (1,1,0): the solution is polynomial and
  // the integrator reproduces it to round-off.
  Curve seg = polyline_curve(c, {pt(c, {0, 0, 0}), pt(c, {1, 1, 0})});
  DevelopResult res = develop(form, seg, rep);
  CHECK(res.element[0][1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.element[1][2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.element[0][2] == doctest::Approx(0.0).epsilon(1e-12));

  // Curved path (sin t, t, 0) on [0,1]: the development only sees the
  // endpoint, so the exact element is the group matrix at (sin 1, 1, 0).
  Curve arc = parametric_curve(c, "t", {parse("sin(t)", Chart({"t"})), parse("t", Chart({"t"})),
                                        parse("0", Chart({"t"}))},
                               0.0, 1.0);
  DevelopResult res_arc = develop(form, arc, rep);
  CHECK(res_arc.element[0][1] == doctest::Approx(std::sin(1.0)).epsilon(1e-10));
  CHECK(res_arc.element[1][2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(res_arc.element[0][2] == doctest::Approx(0.0).epsilon(1e-10));

  // Refined reference within 1e-8 and fourth-order step convergence.
  DevelopResult reference = develop(form, arc, rep, 1e-6);
  CHECK(std::abs(res_arc.element[0][2] - reference.element[0][2]) < 1e-8);

  auto error_at = [&](double step) {
    DevelopResult r = develop(form, arc, rep, step);
    return std::abs(r.element[0][1] - std::sin(1.0));
  };
  double ratio = error_at(0.1) / error_at(0.05);
  INFO("convergence ratio ", ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("development is multiplicative over concatenation") {
  MaurerCartanForm form = heisenberg_form();
  GroupRepresentation rep = GroupRepresentation::heisenberg(LieAlgebra::heisenberg());
  Chart c = heis_chart();

  Curve first = polyline_curve(c, {pt(c, {0, 0, 0}), pt(c, {1, 0, 1})});
  Curve second = polyline_curve(c, {pt(c, {1, 0, 1}), pt(c, {1, 2, 0})});
  Curve whole = polyline_curve(c, {pt(c, {0, 0, 0}), pt(c, {1, 0, 1}), pt(c, {1, 2, 0})});

  DevelopResult r1 = develop(form, first, rep);
  DevelopResult r2 = develop(form, second, rep);
  DevelopResult rw = develop(form, whole, rep);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double composed = 0;
      for (int k = 0; k < 3; ++k)
        composed += r1.element[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                    r2.element[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      CHECK(std::abs(rw.element[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                     composed) < 1e-8);
    }
}

TEST_CASE("path independence") {
  Chart c3 = coordinate_chart(3);
  MaurerCartanForm form = walker3_form(parse("x2^2", c3), 1);
  GroupRepresentation rep1 = GroupRepresentation::abelian(1);
  Curve direct = polyline_curve(c3, {pt(c3, {0, 0, 0}), pt(c3, {1, 1, 1})});
  Curve detour =
      polyline_curve(c3, {pt(c3, {0, 0, 0}), pt(c3, {0, 1, 0}), pt(c3, {1, 1, 1})});
  CHECK(path_independence_check(form, direct, detour, rep1).value);

  MaurerCartanForm heis = heisenberg_form();
  GroupRepresentation rep3 = GroupRepresentation::heisenberg(LieAlgebra::heisenberg());
  Chart hc = heis_chart();
  Curve h_direct = polyline_curve(hc, {pt(hc, {0, 0, 0}), pt(hc, {1, 1, 0})});
  Curve h_detour =
      polyline_curve(hc, {pt(hc, {0, 0, 0}), pt(hc, {0, 1, 0}), pt(hc, {1, 1, 0})});
  CHECK(path_independence_check(heis, h_direct, h_detour, rep3).value);

  // A coframe violating the structure equation develops path-dependently.
  MaurerCartanForm broken = closed_coordinate_form();
  Curve b_direct = polyline_curve(hc, {pt(hc, {0, 0, 0}), pt(hc, {1, 1, 0})});
  Curve b_detour =
      polyline_curve(hc, {pt(hc, {0, 0, 0}), pt(hc, {1, 0, 0}), pt(hc, {1, 1, 0})});
  Verdict v = path_independence_check(broken, b_direct, b_detour, rep3);
  CHECK_FALSE(v.value);
  CHECK(v.note.find("discrepancy") != std::string::npos);

  Curve other_end = polyline_curve(hc, {pt(hc, {0, 0, 0}), pt(hc, {2, 0, 0})});
  CHECK_THROWS_AS(path_independence_check(heis, h_direct, other_end, rep3), ValidationError);
}

TEST_CASE("deformation scans") {
  Chart tc({"t"});

  // Constant abelian family.
  {
    std::vector<ExprPtr> c(8, constant(0));
    DeformationFamily fam = DeformationFamily::create(2, "t", std::move(c));
    std::vector<Rational> grid;
    for (int i = 0; i <= 4; ++i) grid.push_back(Rational(i, 4));
    DeformationReport rep = deformation_scan(fam, grid);
    CHECK(rep.transitions.empty());
    for (const auto& e : rep.entries) {
      CHECK(e.jacobi_ok);
      CHECK(e.label->model == "AbelianWalker");
    }
  }

  // [e1,e2] = t e1 + (1-t) e3: nilpotent only at t = 0.
  {
    std::vector<ExprPtr> c(27, constant(0));
    auto idx = [](int k, int i, int j) { return static_cast<std::size_t>((k * 3 + i) * 3 + j); };
    c[idx(0, 0, 1)] = parse("t", tc);
    c[idx(0, 1, 0)] = parse("-t", tc);
    c[idx(2, 0, 1)] = parse("1 - t", tc);
    c[idx(2, 1, 0)] = parse("t - 1", tc);
    DeformationFamily fam = DeformationFamily::create(3, "t", std::move(c));
    std::vector<Rational> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(Rational(i, 10));
    DeformationReport rep = deformation_scan(fam, grid);
    REQUIRE(rep.entries.size() == 11);
    CHECK(rep.entries[0].label->nilpotent);
    CHECK(rep.entries[0].label->model == "NilpotentWalker");
    for (std::size_t i = 1; i < rep.entries.size(); ++i) {
      CHECK(rep.entries[i].label->solvable);
      CHECK_FALSE(rep.entries[i].label->nilpotent);
      CHECK(rep.entries[i].label->model == "SolvableWalker");
    }
    REQUIRE(rep.transitions.size() == 1);
    CHECK(rep.transitions[0] == 1);
  }

  // Heisenberg scaled by (1 + t) stays nilpotent.
  {
    std::vector<ExprPtr> c(27, constant(0));
    auto idx = [](int k, int i, int j) { return static_cast<std::size_t>((k * 3 + i) * 3 + j); };
    c[idx(2, 0, 1)] = parse("1 + t", tc);
    c[idx(2, 1, 0)] = parse("-1 - t", tc);
    DeformationFamily fam = DeformationFamily::create(3, "t", std::move(c));
    std::vector<Rational> grid = {Rational(0), Rational(1, 2), Rational(1), Rational(2)};
    DeformationReport rep = deformation_scan(fam, grid);
    CHECK(rep.transitions.empty());
    for (const auto& e : rep.entries) CHECK(e.label->model == "NilpotentWalker");
  }

  // Jacobi failures are reported per grid point, not fatal.
  {
    std::vector<ExprPtr> c(27, constant(0));
    auto idx = [](int k, int i, int j) { return static_cast<std::size_t>((k * 3 + i) * 3 + j); };
    // [e1,e2] = t e3, [e1,e3] = e1, [e2,e3] = e2 violates Jacobi for t != 0.
    c[idx(2, 0, 1)] = parse("t", tc);
    c[idx(2, 1, 0)] = parse("-t", tc);
    c[idx(0, 0, 2)] = constant(1);
    c[idx(0, 2, 0)] = constant(-1);
    c[idx(1, 1, 2)] = constant(1);
    c[idx(1, 2, 1)] = constant(-1);
    DeformationFamily fam = DeformationFamily::create(3, "t", std::move(c));
    DeformationReport rep = deformation_scan(fam, {Rational(0), Rational(1)});
    CHECK(rep.entries[0].jacobi_ok);
    CHECK_FALSE(rep.entries[1].jacobi_ok);
    CHECK_FALSE(rep.entries[1].label.has_value());
  }
}
