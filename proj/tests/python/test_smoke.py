"""Smoke tests for the python bindings."""

import json

import pytest

import walkerlie as wl


def test_expression_basics():
    coords = ["x1", "x2", "x3"]
    assert wl.diff("x1^2", "x1", coords) == "2*x1"
    assert wl.diff("sin(x2)", "x2", coords) == "cos(x2)"
    assert wl.simplify("2*x1 + 3*x1", coords) == "5*x1"
    assert wl.evaluate("exp(x1)*x2", {"x1": 0.0, "x2": 5.0}) == pytest.approx(5.0)

    verdict = wl.is_zero("sin(x1)^2 + cos(x1)^2 - 1", ["x1"])
    assert verdict["zero"] and verdict["confidence"] == "PROBABILISTIC"

    exact = wl.is_zero("(x1 + x2)^2 - x1^2 - 2*x1*x2 - x2^2", coords)
    assert exact["zero"] and exact["confidence"] == "EXACT"

    with pytest.raises(wl.ExpressionParseError):
        wl.simplify("x1 +", coords)
    with pytest.raises(wl.EvaluationError):
        wl.evaluate("1/x1", {"x1": 0.0})


def test_walker_metric_pipeline():
    m = wl.WalkerMetric.dim3("x2^2", 1)
    assert m.components()[0][2] == "1"
    assert m.components()[2][2] == "x2^2"
    assert m.signature() == (1, 2)
    assert m.inverse()[0][0] == "-(x2^2)"
    assert m.scal() == "0"
    assert m.ricci()[2][2] == "-1"

    checks = m.canonical_checks()
    for name in ("isotropic", "parallel", "involutive", "ricci_kernel"):
        assert checks[name]["value"], name
        assert checks[name]["confidence"] == "EXACT"

    assert m.is_strict()["value"]
    algebra = m.structure_algebra()
    assert algebra["model"] == "AbelianWalker"
    assert algebra["dimension"] == 1
    assert algebra["extraction_confidence"] == "EXACT"

    dev = m.develop_polyline([[0, 0, 0], [1, 2, 3]])
    assert dev["exact"] == ["1"]

    inv = m.invariants()
    assert inv["scal"] == "0"
    assert inv["ricci_squared"] == "0"
    assert inv["kretschmann"] == "0"


def test_nonstrict_profile_reports_honestly():
    m = wl.WalkerMetric.dim3("x1^2", 1)
    assert not m.is_strict()["value"]
    checks = m.canonical_checks()
    assert checks["parallel"]["value"]
    assert not checks["ricci_kernel"]["value"]


def test_classification():
    heis = wl.classify_algebra(3, ["[1,2] = e3"])
    assert heis["jacobi"]
    assert heis["label"]["model"] == "NilpotentWalker"
    assert heis["label"]["nilpotency_step"] == 2
    assert heis["lower_central_series"] == [3, 1, 0]

    rot = wl.classify_algebra(3, ["[3,1] = -e2", "[3,2] = e1"])
    assert rot["label"]["solvable"]
    assert not rot["label"]["completely_solvable"]


def test_koszul():
    brackets = ["[1,2] = e1", "[2,3] = e3"]
    gram = [["0", "0", "1", "0"], ["0", "0", "0", "1"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]]
    table = wl.koszul_connection(4, brackets, gram)
    assert table["2,1"] == ["-1", "0", "0", "0"]  # nabla_{e2} e1 = -e1

    report = wl.invariant_walker_report(4, brackets, gram, [["1", "0", "0", "0"], ["0", "0", "0", "1"]])
    assert report["isotropic"] and report["parallel"]
    assert report["classification"]["abelian"]


def test_deformation_scan():
    entries = wl.deformation_scan(3, ["[1,2] = t*e1 + (1 - t)*e3"], ["0", "1/2", "1"])
    assert entries[0]["label"]["model"] == "NilpotentWalker"
    assert entries[1]["label"]["model"] == "SolvableWalker"
    assert entries[2]["label"]["model"] == "SolvableWalker"


def test_run_check_roundtrip():
    doc = {
        "kind": "walker3",
        "epsilon": 1,
        "f": "x2^2",
        "curves": [{"type": "polyline", "vertices": [[0, 0, 0], [1, 2, 3]]}],
    }
    report = json.loads(wl.run_check(json.dumps(doc)))
    assert report["kind"] == "walker3"
    assert report["seed"] == 42
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["ricci_kernel"]["verdict"] is True
    assert by_name["strictness"]["value"] == "strict"
    assert "[1]" in by_name["develop[0]"]["value"]
    assert report["tensors"]["scal"] == "0"
    # Deterministic rendering.
    assert wl.run_check(json.dumps(doc)) == wl.run_check(json.dumps(doc))
