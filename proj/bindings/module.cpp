#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "walkerlie/curvature.hpp"
#include "walkerlie/pipeline.hpp"

namespace py = pybind11;
using namespace walkerlie;

namespace {

Chart chart_of(const std::vector<std::string>& coords) { return Chart(coords); }

Point point_of(const std::map<std::string, double>& values) { return Point(values); }

std::vector<std::vector<std::string>> matrix_strings(const ExprMatrix& m) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : m) {
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(print(e));
    out.push_back(std::move(r));
  }
  return out;
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["value"] = v.value;
  d["confidence"] = confidence_name(v.confidence);
  if (v.witness) {
    py::dict w;
    for (const auto& [k, val] : v.witness->values()) w[py::str(k)] = val;
    d["witness"] = w;
  }
  if (!v.note.empty()) d["note"] = v.note;
  return d;
}

py::dict label_dict(const ClassificationLabel& label) {
  py::dict d;
  d["model"] = label.model;
  d["abelian"] = label.abelian;
  d["nilpotent"] = label.nilpotent;
  d["nilpotency_step"] = label.nilpotency_step;
  d["solvable"] = label.solvable;
  d["derived_length"] = label.derived_length;
  d["completely_solvable"] = label.completely_solvable;
  d["completely_solvable_confidence"] = confidence_name(label.completely_solvable_confidence);
  if (!label.witness_note.empty()) d["witness"] = label.witness_note;
  return d;
}

ExprMatrix parse_matrix(const std::vector<std::vector<std::string>>& rows, const Chart& chart) {
  ExprMatrix out;
  for (const auto& row : rows) {
    ExprVector r;
    for (const auto& text : row) r.push_back(parse(text, chart));
    out.push_back(std::move(r));
  }
  return out;
}

RatMatrix parse_rat_matrix(const std::vector<std::vector<std::string>>& rows) {
  RatMatrix out;
  for (const auto& row : rows) {
    RatVector r;
    for (const auto& text : row) r.push_back(rational_from_string(text));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RatVector> parse_vectors(const std::vector<std::vector<std::string>>& rows) {
  std::vector<RatVector> out;
  for (const auto& row : rows) {
    RatVector r;
    for (const auto& text : row) r.push_back(rational_from_string(text));
    out.push_back(std::move(r));
  }
  return out;
}

/// A built Walker metric together with the data needed for the checks.
class PyWalkerMetric {
 public:
  PyWalkerMetric(WalkerSpec spec, MetricTensor g) : spec_(std::move(spec)), g_(std::move(g)) {}

  static PyWalkerMetric dim3(const std::string& f, int epsilon) {
    WalkerSpec spec = walker3_spec(parse(f, coordinate_chart(3)), epsilon);
    return PyWalkerMetric(spec, build_metric(spec));
  }
  static PyWalkerMetric dim4(const std::string& a, const std::string& b, const std::string& c) {
    Chart chart = coordinate_chart(4);
    WalkerSpec spec = walker4_spec(parse(a, chart), parse(b, chart), parse(c, chart));
    return PyWalkerMetric(spec, build_metric(spec));
  }
  static PyWalkerMetric general(const std::vector<std::string>& coords, int rank,
                                const std::vector<std::vector<std::string>>& h,
                                const std::vector<std::vector<std::string>>& a,
                                const std::vector<std::vector<std::string>>& b) {
    Chart chart(coords);
    WalkerSpec spec =
        walker_general_spec(chart, rank, parse_matrix(h, chart), parse_matrix(a, chart),
                            parse_matrix(b, chart));
    return PyWalkerMetric(spec, build_metric(spec));
  }

  std::vector<std::string> coordinates() const { return g_.chart.names(); }
  std::vector<std::vector<std::string>> components() const { return matrix_strings(g_.components); }
  std::pair<int, int> signature() const { return {g_.signature.minus, g_.signature.plus}; }
  std::vector<std::vector<std::string>> inverse() const {
    return matrix_strings(invert(g_).components);
  }
  std::map<std::string, std::string> christoffel_nonzero() const {
    ConnectionCoefficients conn = christoffel(g_, invert(g_));
    std::map<std::string, std::string> out;
    int n = g_.dim();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          if (is_constant(conn.at(k, i, j), 0)) continue;
          std::string key = std::to_string(k + 1) + "," + std::to_string(i + 1) + "," +
                            std::to_string(j + 1);
          out[key] = print(conn.at(k, i, j));
        }
    return out;
  }
  std::vector<std::vector<std::string>> ricci_tensor() const {
    return matrix_strings(ricci(riemann(christoffel(g_, invert(g_)))).components);
  }
  std::string scal() const {
    InverseMetric gi = invert(g_);
    return print(scalar_curvature(ricci(riemann(christoffel(g_, gi))), gi));
  }
  py::dict invariants() const {
    InvariantsReport rep = curvature_invariants(g_);
    py::dict d;
    d["scal"] = print(rep.scal);
    d["ricci_squared"] = print(rep.ricci_squared);
    d["kretschmann"] = print(rep.kretschmann);
    return d;
  }
  py::dict is_strict_() const { return verdict_dict(is_strict(spec_)); }
  py::dict canonical_checks() const {
    Distribution d = canonical();
    py::dict out;
    out["isotropic"] = verdict_dict(is_totally_isotropic(d, g_));
    out["parallel"] = verdict_dict(is_parallel(d, g_));
    out["involutive"] = verdict_dict(is_involutive(d));
    out["ricci_kernel"] = verdict_dict(ricci_kernel_check(g_, d));
    return out;
  }
  py::dict structure_algebra_() const {
    Confidence how = Confidence::Exact;
    LieAlgebra algebra = structure_algebra(canonical().fields(), g_, {}, &how);
    py::dict d = label_dict(classify(algebra));
    d["dimension"] = algebra.dim();
    d["extraction_confidence"] = confidence_name(how);
    return d;
  }
  py::dict develop_polyline(const std::vector<std::vector<double>>& vertices) const {
    Distribution d = canonical();
    std::vector<VectorField> complement;
    for (int i = spec_.rank; i < g_.dim(); ++i) complement.push_back(coordinate_field(g_.chart, i));
    Confidence how = Confidence::Exact;
    LieAlgebra algebra = structure_algebra(d.fields(), g_, {}, &how);
    MaurerCartanForm form = build_mc_form(d.fields(), complement, algebra);
    std::vector<Point> pts;
    for (const auto& v : vertices) {
      Point p;
      for (int i = 0; i < g_.dim(); ++i) p.set(g_.chart.name(i), v.at(static_cast<std::size_t>(i)));
      pts.push_back(std::move(p));
    }
    DevelopResult res =
        develop(form, polyline_curve(g_.chart, std::move(pts)),
                GroupRepresentation::abelian(algebra.dim()));
    py::dict out;
    out["element"] = res.element;
    if (res.abelian_log) out["log"] = *res.abelian_log;
    if (res.abelian_exact) {
      std::vector<std::string> exact;
      for (const auto& q : *res.abelian_exact) exact.push_back(to_string(q));
      out["exact"] = exact;
    }
    return out;
  }

 private:
  Distribution canonical() const {
    std::vector<VectorField> fields;
    for (int i = 0; i < spec_.rank; ++i) fields.push_back(coordinate_field(g_.chart, i));
    return Distribution::create(g_.chart, std::move(fields), spec_.rank, true);
  }
  WalkerSpec spec_;
  MetricTensor g_;
};

LieAlgebra algebra_from_brackets(int dim, const std::vector<std::string>& brackets) {
  SpecDocument doc;
  doc.kind = "lie_group";
  doc.dimension = dim;
  doc.brackets = brackets;
  return algebra_of(doc);
}

py::dict koszul_report(int dim, const std::vector<std::string>& brackets,
                       const std::vector<std::vector<std::string>>& gram,
                       const std::vector<std::vector<std::string>>& subspace) {
  LieAlgebra algebra = algebra_from_brackets(dim, brackets);
  InvariantMetric metric = InvariantMetric::create(algebra, parse_rat_matrix(gram));
  InvariantWalkerReport rep = walker_check_invariant(algebra, metric, parse_vectors(subspace));
  py::dict d;
  d["isotropic"] = rep.isotropic;
  d["parallel"] = rep.parallel;
  d["bracket_closed"] = rep.bracket_closed;
  if (rep.classification) d["classification"] = label_dict(*rep.classification);
  if (!rep.note.empty()) d["note"] = rep.note;
  return d;
}

std::map<std::string, std::vector<std::string>> koszul_table(
    int dim, const std::vector<std::string>& brackets,
    const std::vector<std::vector<std::string>>& gram) {
  LieAlgebra algebra = algebra_from_brackets(dim, brackets);
  InvariantMetric metric = InvariantMetric::create(algebra, parse_rat_matrix(gram));
  InvariantConnection conn = koszul_connection(algebra, metric);
  std::map<std::string, std::vector<std::string>> out;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const RatVector& c = conn.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      bool zero = true;
      for (const auto& x : c) zero = zero && x == 0;
      if (zero) continue;
      std::vector<std::string> comp;
      for (const auto& x : c) comp.push_back(to_string(x));
      out[std::to_string(i + 1) + "," + std::to_string(j + 1)] = std::move(comp);
    }
  return out;
}

py::list scan_family(int dim, const std::vector<std::string>& brackets,
                     const std::vector<std::string>& grid) {
  SpecDocument doc;
  doc.kind = "deformation";
  doc.dimension = dim;
  doc.brackets = brackets;
  for (const auto& g : grid) doc.grid.push_back(rational_from_string(g));
  DeformationReport rep = deformation_scan(family_of(doc), doc.grid);
  py::list out;
  for (const auto& e : rep.entries) {
    py::dict d;
    d["t"] = to_string(e.t);
    d["jacobi"] = e.jacobi_ok;
    if (e.label) d["label"] = label_dict(*e.label);
    out.append(std::move(d));
  }
  return out;
}

std::string run_check_text(const std::string& json_text) {
  return run_check(parse_spec_text(json_text)).to_json_string();
}

std::string run_check_file(const std::string& path) {
  return run_check(load_spec_file(path)).to_json_string();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symbolic checks for Walker metrics, null parallel distributions, structure "
            "algebras, and developing maps";

  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<ParseError>(m, "ExpressionParseError");
  py::register_exception<EvalError>(m, "EvaluationError");
  py::register_exception<SingularMetricError>(m, "SingularMetricError");
  py::register_exception<InternalError>(m, "InternalInconsistencyError");
  py::register_exception<PreconditionError>(m, "PreconditionError");

  m.def(
      "simplify",
      [](const std::string& text, const std::vector<std::string>& coords) {
        return print(simplify(parse(text, chart_of(coords))));
      },
      py::arg("text"), py::arg("coordinates"));
  m.def(
      "diff",
      [](const std::string& text, const std::string& var, const std::vector<std::string>& coords) {
        return print(differentiate(parse(text, chart_of(coords)), var));
      },
      py::arg("text"), py::arg("var"), py::arg("coordinates"));
  m.def(
      "evaluate",
      [](const std::string& text, const std::map<std::string, double>& at) {
        std::vector<std::string> coords;
        for (const auto& [k, v] : at) coords.push_back(k);
        return evaluate(parse(text, chart_of(coords)), point_of(at));
      },
      py::arg("text"), py::arg("at"));
  m.def(
      "is_zero",
      [](const std::string& text, const std::vector<std::string>& coords) {
        ZeroResult r = walkerlie::is_zero(parse(text, chart_of(coords)));
        py::dict d;
        d["zero"] = r.zero;
        d["confidence"] = confidence_name(r.confidence);
        if (r.witness) {
          py::dict w;
          for (const auto& [k, v] : r.witness->values()) w[py::str(k)] = v;
          d["witness"] = w;
        }
        return d;
      },
      py::arg("text"), py::arg("coordinates"));

  py::class_<PyWalkerMetric>(m, "WalkerMetric")
      .def_static("dim3", &PyWalkerMetric::dim3, py::arg("f"), py::arg("epsilon") = 1)
      .def_static("dim4", &PyWalkerMetric::dim4, py::arg("a"), py::arg("b"), py::arg("c"))
      .def_static("general", &PyWalkerMetric::general, py::arg("coordinates"), py::arg("rank"),
                  py::arg("h"), py::arg("a"), py::arg("b"))
      .def("coordinates", &PyWalkerMetric::coordinates)
      .def("components", &PyWalkerMetric::components)
      .def("signature", &PyWalkerMetric::signature)
      .def("inverse", &PyWalkerMetric::inverse)
      .def("christoffel_nonzero", &PyWalkerMetric::christoffel_nonzero)
      .def("ricci", &PyWalkerMetric::ricci_tensor)
      .def("scal", &PyWalkerMetric::scal)
      .def("invariants", &PyWalkerMetric::invariants)
      .def("is_strict", &PyWalkerMetric::is_strict_)
      .def("canonical_checks", &PyWalkerMetric::canonical_checks)
      .def("structure_algebra", &PyWalkerMetric::structure_algebra_)
      .def("develop_polyline", &PyWalkerMetric::develop_polyline, py::arg("vertices"));

  m.def(
      "classify_algebra",
      [](int dim, const std::vector<std::string>& brackets) {
        LieAlgebra algebra = algebra_from_brackets(dim, brackets);
        JacobiResult jac = jacobi_check(algebra);
        py::dict d;
        d["jacobi"] = jac.ok;
        if (jac.ok) {
          d["label"] = label_dict(classify(algebra));
          d["derived_series"] = derived_series(algebra);
          d["lower_central_series"] = lower_central_series(algebra);
        }
        return d;
      },
      py::arg("dimension"), py::arg("brackets"));

  m.def("koszul_connection", &koszul_table, py::arg("dimension"), py::arg("brackets"),
        py::arg("metric"));
  m.def("invariant_walker_report", &koszul_report, py::arg("dimension"), py::arg("brackets"),
        py::arg("metric"), py::arg("subspace"));
  m.def("deformation_scan", &scan_family, py::arg("dimension"), py::arg("brackets"),
        py::arg("grid"));

  m.def("run_check", &run_check_text, py::arg("json_text"),
        "Runs the full pipeline on a JSON document and returns the JSON report");
  m.def("run_check_file", &run_check_file, py::arg("path"));
}
