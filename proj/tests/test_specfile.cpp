#include <doctest.h>

#include "walkerlie/pipeline.hpp"

using namespace walkerlie;

namespace {

const char* kWalker3 = R"({
  "kind": "walker3", "epsilon": 1, "f": "x2^2",
  "curves": [{"type": "polyline", "vertices": [[0,0,0],[1,2,3]]}]
})";

const char* kLieGroup = R"({
  "kind": "lie_group", "dimension": 4,
  "basis": ["Y1","Y2","Y3","Y4"],
  "brackets": ["[1,2] = e1", "[2,3] = e3"],
  "metric": [[0,0,1,0],[0,0,0,1],[1,0,0,0],[0,1,0,0]],
  "subspaces": [{"name": "D12", "span": [[1,0,0,0],[0,1,0,0]]},
                 {"name": "D14", "span": [[1,0,0,0],[0,0,0,1]]}]
})";

const char* kDeformation = R"({
  "kind": "deformation", "dimension": 3,
  "brackets": ["[1,2] = t*e1 + (1 - t)*e3"],
  "grid": [0, "1/10", "2/10", "3/10", "4/10", "5/10", "6/10", "7/10", "8/10", "9/10", 1]
})";

const CheckRecord* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("document validation") {
  CHECK_THROWS_AS(parse_spec_text("{"), ValidationError);
  CHECK_THROWS_AS(parse_spec_text(R"({"kind": "nope"})"), ValidationError);
  CHECK_THROWS_AS(parse_spec_text(R"({"kind": "walker3"})"), ValidationError);
  CHECK_THROWS_AS(parse_spec_text(R"({"kind": "walker3", "f": "x2^2", "epsilon": 3})"),
                  ValidationError);
  // Malformed expressions surface as parse errors with a position.
  SpecDocument doc = parse_spec_text(R"({"kind": "walker3", "f": "x1 +"})");
  CHECK_THROWS_AS(walker_spec_of(doc), ParseError);
  SpecDocument doc2 = parse_spec_text(R"({"kind": "walker3", "f": "q^2"})");
  CHECK_THROWS_AS(walker_spec_of(doc2), UnknownIdentifierError);
  // Rank violations are caught when the Walker data is assembled.
  SpecDocument doc3 = parse_spec_text(
      R"({"kind": "walker_general", "dimension": 4, "rank": 3, "b": [["0","0","0"],["0","0","0"],["0","0","0"]]})");
  CHECK_THROWS_AS(walker_spec_of(doc3), ValidationError);
}

TEST_CASE("walker3 pipeline report") {
  Report r = run_check(parse_spec_text(kWalker3));
  CHECK(r.all_passed());

  const CheckRecord* strict = find(r, "strictness");
  REQUIRE(strict);
  CHECK(strict->value == "strict");

  const CheckRecord* kernel = find(r, "ricci_kernel");
  REQUIRE(kernel);
  CHECK(*kernel->verdict);
  CHECK(*kernel->confidence == Confidence::Exact);

  const CheckRecord* cls = find(r, "classification");
  REQUIRE(cls);
  CHECK(cls->value.find("AbelianWalker") != std::string::npos);

  const CheckRecord* dev = find(r, "develop[0]");
  REQUIRE(dev);
  CHECK(dev->value.find("[1]") != std::string::npos);

  // Scalar curvature of this profile vanishes.
  bool scal_seen = false;
  for (const auto& [name, value] : r.tensors) {
    if (name == "scal") {
      scal_seen = true;
      CHECK(value == "0");
    }
  }
  CHECK(scal_seen);

  // The two diagnostics for the complement and the inverse components are
  // informational, not failures.
  const CheckRecord* note = find(r, "orthogonal_complement_note");
  REQUIRE(note);
  CHECK(note->kind == CheckKind::Info);
  const CheckRecord* inv_note = find(r, "inverse_components");
  REQUIRE(inv_note);
  CHECK(inv_note->kind == CheckKind::Info);
}

TEST_CASE("non-strict profiles fail the kernel check but report honestly") {
  Report r = run_check(parse_spec_text(R"({"kind": "walker3", "epsilon": 1, "f": "x1^2"})"));
  CHECK_FALSE(r.all_passed());
  const CheckRecord* kernel = find(r, "ricci_kernel");
  REQUIRE(kernel);
  CHECK_FALSE(*kernel->verdict);
  const CheckRecord* strict = find(r, "strictness");
  REQUIRE(strict);
  CHECK(strict->value == "not strict");
  // Parallelism of the distribution itself still holds.
  const CheckRecord* par = find(r, "distribution_parallel");
  REQUIRE(par);
  CHECK(*par->verdict);
}

TEST_CASE("lie_group pipeline reports subspace verdicts") {
  Report r = run_check(parse_spec_text(kLieGroup));
  CHECK(r.all_passed());
  CHECK(find(r, "jacobi"));
  const CheckRecord* iso = find(r, "subspace D12.isotropic");
  REQUIRE(iso);
  CHECK(iso->value == "true");
  const CheckRecord* par = find(r, "subspace D12.parallel");
  REQUIRE(par);
  CHECK(par->value == "true");
  const CheckRecord* alg = find(r, "subspace D12.structure_algebra");
  REQUIRE(alg);
  CHECK(alg->value.find("SolvableWalker") != std::string::npos);
  const CheckRecord* alg14 = find(r, "subspace D14.structure_algebra");
  REQUIRE(alg14);
  CHECK(alg14->value.find("AbelianWalker") != std::string::npos);
}

TEST_CASE("deformation pipeline finds the single transition") {
  Report r = run_deform(parse_spec_text(kDeformation));
  CHECK(r.all_passed());
  const CheckRecord* t0 = find(r, "t=0");
  REQUIRE(t0);
  CHECK(t0->value.find("NilpotentWalker") != std::string::npos);
  const CheckRecord* t5 = find(r, "t=1/2");
  REQUIRE(t5);
  CHECK(t5->value.find("SolvableWalker") != std::string::npos);
  const CheckRecord* tr = find(r, "transitions");
  REQUIRE(tr);
  CHECK(tr->value == "NilpotentWalker -> SolvableWalker at t=1/10");
}

TEST_CASE("classify subcommand") {
  Report r = run_classify(parse_spec_text(R"({
    "kind": "lie_group", "dimension": 2,
    "brackets": ["[1,2] = e1"],
    "metric": [[0,1],[1,0]]
  })"));
  const CheckRecord* cls = find(r, "classification");
  REQUIRE(cls);
  CHECK(cls->value.find("SolvableWalker") != std::string::npos);
  CHECK(cls->value.find("completely solvable: SAMPLED") != std::string::npos);
  const CheckRecord* der = find(r, "derived_series");
  REQUIRE(der);
  CHECK(der->value == "2 1 0 ");
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* text : {kWalker3, kLieGroup, kDeformation}) {
    SpecDocument doc = parse_spec_text(text);
    Report a = doc.kind == "deformation" ? run_deform(doc) : run_check(doc);
    Report b = doc.kind == "deformation" ? run_deform(doc) : run_check(doc);
    CHECK(a.to_json_string() == b.to_json_string());
  }
}

TEST_CASE("every verdict carries a confidence tag") {
  for (const char* text : {kWalker3, kLieGroup, kDeformation}) {
    SpecDocument doc = parse_spec_text(text);
    Report r = doc.kind == "deformation" ? run_deform(doc) : run_check(doc);
    for (const auto& c : r.checks) {
      if (c.kind == CheckKind::Assert) {
        CHECK(c.verdict.has_value());
        CHECK(c.confidence.has_value());
      }
    }
  }
}

TEST_CASE("develop subcommand integrates declared curves") {
  Report r = run_develop(parse_spec_text(R"({
    "kind": "walker3", "epsilon": 1, "f": "x2^2 + x3",
    "curves": [
      {"type": "polyline", "vertices": [[0,0,0],[1,1,1]]},
      {"type": "polyline", "vertices": [[0,0,0],[0,1,0],[1,1,1]]}
    ]
  })"));
  CHECK(r.all_passed());
  const CheckRecord* d0 = find(r, "develop[0]");
  REQUIRE(d0);
  CHECK(d0->value.find("[1]") != std::string::npos);
  const CheckRecord* pi = find(r, "path_independence");
  REQUIRE(pi);
  CHECK(*pi->verdict);
}
