#include "walkerlie/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "walkerlie/curvature.hpp"

namespace walkerlie {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(Report& report, std::string name)
      : report_(report), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    auto end = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(end - start_).count();
    report_.timings_ms.emplace_back(name_, ms);
  }

 private:
  Report& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

std::string matrix_string(const ExprMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << print(m[i][j]);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string field_string(const VectorField& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < f.chart.dim(); ++i) {
    const ExprPtr& c = f.components[static_cast<std::size_t>(i)];
    if (is_constant(c, 0)) continue;
    if (!first) os << " + ";
    if (!is_constant(c, 1)) os << "(" << print(c) << ")*";
    os << "d/d" << f.chart.name(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string ratvec_string(const RatVector& v, const std::vector<std::string>& labels) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!first) os << " + ";
    if (v[i] != 1) os << to_string(v[i]) << "*";
    os << labels[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string label_string(const ClassificationLabel& label) {
  std::ostringstream os;
  os << label.model << " {";
  os << "abelian: " << (label.abelian ? "yes" : "no");
  os << ", nilpotent: " << (label.nilpotent ? "step " + std::to_string(label.nilpotency_step) : "no");
  os << ", solvable: "
     << (label.solvable ? "length " + std::to_string(label.derived_length) : "no");
  os << ", completely solvable: "
     << (label.completely_solvable
             ? std::string(confidence_name(label.completely_solvable_confidence))
             : "no");
  os << "}";
  return os.str();
}

std::string nonzero_christoffel(const ConnectionCoefficients& conn) {
  std::ostringstream os;
  bool first = true;
  int n = conn.chart.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const ExprPtr& e = conn.at(k, i, j);
        if (is_constant(e, 0)) continue;
        if (!first) os << "; ";
        os << "G^" << k + 1 << "_{" << i + 1 << j + 1 << "} = " << print(e);
        first = false;
      }
  if (first) os << "all zero";
  return os.str();
}

GroupRepresentation representation_for(const LieAlgebra& algebra, const SpecDocument& doc) {
  const std::string& requested = doc.representation;
  if (requested == "custom")
    return GroupRepresentation::create(algebra, doc.representation_size,
                                       doc.representation_generators);
  if (requested == "abelian" || (requested == "auto" && classify(algebra).abelian))
    return GroupRepresentation::abelian(algebra.dim());
  if (requested == "heisenberg") return GroupRepresentation::heisenberg(algebra);
  if (requested == "affine") return GroupRepresentation::affine(algebra);
  if (requested == "auto") {
    if (algebra.dim() == 3) {
      try {
        return GroupRepresentation::heisenberg(algebra);
      } catch (const ValidationError&) {
      }
    }
    if (algebra.dim() == 2) {
      try {
        return GroupRepresentation::affine(algebra);
      } catch (const ValidationError&) {
      }
    }
    throw ValidationError(
        "no built-in representation matches this algebra; supply \"representation\"");
  }
  throw ValidationError("unknown representation '" + requested + "'");
}

struct WalkerTensors {
  WalkerSpec spec;
  MetricTensor g;
  InverseMetric gi;
  ConnectionCoefficients conn;
  RiemannTensor riem;
  RicciTensor ric;
  ExprPtr scal;
};

WalkerTensors compute_tensors(const SpecDocument& doc, Report& report) {
  ZeroContext ctx = doc.zero_context();
  WalkerSpec spec = walker_spec_of(doc);
  Stopwatch timer(report, "tensors");
  MetricTensor g = build_metric(spec, ctx);
  InverseMetric gi = invert(g, ctx);
  ConnectionCoefficients conn = christoffel(g, gi);
  RiemannTensor riem = riemann(conn);
  RicciTensor ric = ricci(riem, ctx);
  ExprPtr scal = scalar_curvature(ric, gi);
  return WalkerTensors{std::move(spec), std::move(g), std::move(gi), std::move(conn),
                       std::move(riem), std::move(ric), std::move(scal)};
}

void record_tensors(Report& report, const WalkerTensors& t) {
  report.tensors.emplace_back("metric", matrix_string(t.g.components));
  report.tensors.emplace_back("inverse_metric", matrix_string(t.gi.components));
  report.tensors.emplace_back("christoffel_nonzero", nonzero_christoffel(t.conn));
  report.tensors.emplace_back("ricci", matrix_string(t.ric.components));
  report.tensors.emplace_back("scal", print(t.scal));
  std::ostringstream sig;
  sig << "(" << t.g.signature.minus << "," << t.g.signature.plus << ")";
  report.tensors.emplace_back("signature", sig.str());
}

Distribution canonical_distribution(const WalkerTensors& t, const ZeroContext& ctx) {
  std::vector<VectorField> fields;
  for (int i = 0; i < t.spec.rank; ++i) fields.push_back(coordinate_field(t.g.chart, i));
  return Distribution::create(t.g.chart, std::move(fields), t.spec.rank, true, ctx);
}

void walker_pipeline(const SpecDocument& doc, Report& report) {
  ZeroContext ctx = doc.zero_context();
  WalkerTensors t = compute_tensors(doc, report);
  record_tensors(report, t);
  int n = t.g.dim();
  int r = t.spec.rank;

  report.add(CheckRecord::assertion("metric_nondegenerate", true, Confidence::Exact));
  report.add(CheckRecord::assertion("inverse_verified", true, Confidence::Exact));
  if (doc.kind == "walker3") {
    report.add(CheckRecord::info(
        "inverse_components",
        "computed inverse has entry -f at position (1,1) and 0 at (3,3); the profile appears at "
        "the slot dual to the null coordinate (verified by g*g^-1 = I)"));
  }

  {
    Stopwatch timer(report, "curvature_identities");
    Verdict antisym = Verdict::pass();
    Verdict bianchi = Verdict::pass();
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            antisym.merge(is_zero(sum(t.riem.at(l, k, i, j), t.riem.at(l, k, j, i)), ctx));
            bianchi.merge(is_zero(
                sum({t.riem.at(l, k, i, j), t.riem.at(l, i, j, k), t.riem.at(l, j, k, i)}), ctx));
          }
    report.add(CheckRecord::assertion("riemann_antisymmetry", antisym));
    report.add(CheckRecord::assertion("first_bianchi", bianchi));

    Verdict compat = Verdict::pass();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<ExprPtr> terms;
          terms.push_back(differentiate(
              t.g.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
              t.g.chart.name(k)));
          for (int l = 0; l < n; ++l) {
            terms.push_back(negate(product(
                t.conn.at(l, k, i),
                t.g.components[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)])));
            terms.push_back(negate(product(
                t.conn.at(l, k, j),
                t.g.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)])));
          }
          compat.merge(is_zero(sum(std::move(terms)), ctx));
        }
    report.add(CheckRecord::assertion("metric_compatibility", compat));
  }

  Distribution d = canonical_distribution(t, ctx);
  {
    Stopwatch timer(report, "distribution_checks");
    report.add(CheckRecord::assertion("distribution_isotropic", is_totally_isotropic(d, t.g, ctx)));
    report.add(CheckRecord::assertion("distribution_parallel", is_parallel(d, t.g, ctx)));
    report.add(CheckRecord::assertion("distribution_involutive", is_involutive(d, ctx)));
    report.add(CheckRecord::assertion("ricci_kernel", ricci_kernel_check(t.g, d, ctx)));
  }

  Verdict strict = is_strict(t.spec, ctx);
  report.add(CheckRecord::quantity("strictness", strict.value ? "strict" : "not strict",
                                strict.confidence));

  {
    Stopwatch timer(report, "scalar_invariants");
    InvariantsReport inv = curvature_invariants(t.g, ctx);
    report.tensors.emplace_back("ricci_squared", print(inv.ricci_squared));
    report.tensors.emplace_back("kretschmann", print(inv.kretschmann));
  }

  {
    Stopwatch timer(report, "complement");
    Distribution perp = orthogonal_complement(d, t.g, ctx);
    std::ostringstream os;
    for (std::size_t i = 0; i < perp.fields().size(); ++i) {
      if (i) os << ", ";
      os << field_string(perp.fields()[i]);
    }
    report.add(CheckRecord::quantity("orthogonal_complement", "span{" + os.str() + "}"));
    if (perp.rank() < n) {
      std::ostringstream note;
      note << "the complement is a proper rank-" << perp.rank()
           << " subbundle containing the null distribution; it is not the full tangent bundle";
      report.add(CheckRecord::info("orthogonal_complement_note", note.str()));
    }
    Verdict contains = Verdict::pass();
    for (const auto& f : d.fields()) contains.merge(span_membership(perp.fields(), f, ctx));
    report.add(CheckRecord::assertion("complement_contains_distribution", contains));
  }

  if (strict.value) {
    Stopwatch timer(report, "structure_algebra");
    Confidence how = Confidence::Exact;
    LieAlgebra algebra = structure_algebra(d.fields(), t.g, ctx, &how);
    ClassificationLabel label = classify(algebra, ctx.seed);
    report.add(CheckRecord::quantity("structure_algebra",
                                  "dimension " + std::to_string(algebra.dim()) +
                                      (label.abelian ? ", abelian" : ", non-abelian"),
                                  how));
    report.add(CheckRecord::quantity("classification", label_string(label),
                                  label.completely_solvable_confidence));

    std::vector<VectorField> complement;
    for (int i = r; i < n; ++i) complement.push_back(coordinate_field(t.g.chart, i));
    MaurerCartanForm form = build_mc_form(d.fields(), complement, algebra, ctx);
    report.add(CheckRecord::assertion("maurer_cartan", mc_check(form, ctx)));

    if (!doc.curves.empty()) {
      GroupRepresentation rep = representation_for(algebra, doc);
      for (std::size_t ci = 0; ci < doc.curves.size(); ++ci) {
        Curve curve = curve_of(doc.curves[ci], t.g.chart);
        DevelopResult res = develop(form, curve, rep);
        std::ostringstream os;
        if (res.abelian_exact) {
          os << "[";
          for (std::size_t i = 0; i < res.abelian_exact->size(); ++i)
            os << (i ? ", " : "") << to_string((*res.abelian_exact)[i]);
          os << "] (exact line integrals)";
        } else if (res.abelian_log) {
          os << "[";
          for (std::size_t i = 0; i < res.abelian_log->size(); ++i)
            os << (i ? ", " : "") << (*res.abelian_log)[i];
          os << "]";
        } else {
          os << "group element computed (" << res.steps << " steps)";
        }
        report.add(CheckRecord::quantity("develop[" + std::to_string(ci) + "]", os.str()));
      }
    }
  } else {
    report.add(CheckRecord::info(
        "structure_algebra",
        "the coordinate frame is not parallel (profile depends on the null coordinates); "
        "structure-algebra extraction requires a strict form"));
    if (r == 1) {
      report.add(CheckRecord::info(
          "rank_one_model",
          "rank-1 distributions always carry the one-dimensional abelian model"));
    }
  }
}

void lie_group_pipeline(const SpecDocument& doc, Report& report) {
  ZeroContext ctx = doc.zero_context();
  Stopwatch timer(report, "lie_group");
  LieAlgebra algebra = algebra_of(doc);
  JacobiResult jac = jacobi_check(algebra);
  CheckRecord jrec = CheckRecord::assertion("jacobi", jac.ok, Confidence::Exact);
  if (jac.witness) {
    std::ostringstream os;
    os << "failing cyclic sum at (i,j,k,l) = (" << (*jac.witness)[0] + 1 << ","
       << (*jac.witness)[1] + 1 << "," << (*jac.witness)[2] + 1 << "," << (*jac.witness)[3] + 1
       << ")";
    jrec.note = os.str();
  }
  report.add(jrec);
  if (!jac.ok) return;

  InvariantMetric metric = InvariantMetric::create(algebra, doc.metric);
  InvariantConnection conn = koszul_connection(algebra, metric);
  report.add(CheckRecord::assertion("koszul_torsion_free_and_compatible", true, Confidence::Exact));
  {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < algebra.dim(); ++i)
      for (int j = 0; j < algebra.dim(); ++j) {
        const RatVector& c = conn.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        bool zero = true;
        for (const auto& x : c) zero = zero && x == 0;
        if (zero) continue;
        if (!first) os << "; ";
        os << "nabla_" << algebra.labels()[static_cast<std::size_t>(i)] << " "
           << algebra.labels()[static_cast<std::size_t>(j)] << " = "
           << ratvec_string(c, algebra.labels());
        first = false;
      }
    if (first) os << "all zero";
    report.tensors.emplace_back("koszul_connection", os.str());
  }

  ClassificationLabel ambient = classify(algebra, ctx.seed);
  report.add(CheckRecord::quantity("ambient_classification", label_string(ambient),
                                ambient.completely_solvable_confidence));

  for (const auto& sub : doc.subspaces) {
    InvariantWalkerReport rep = walker_check_invariant(algebra, metric, sub.span, ctx.seed);
    std::string prefix = "subspace " + sub.name;
    report.add(CheckRecord::quantity(prefix + ".isotropic", rep.isotropic ? "true" : "false",
                                  Confidence::Exact));
    report.add(CheckRecord::quantity(prefix + ".parallel", rep.parallel ? "true" : "false",
                                  Confidence::Exact));
    if (rep.parallel && !rep.bracket_closed) {
      report.add(CheckRecord::assertion(prefix + ".consistency", false, Confidence::Exact));
      report.add(CheckRecord::info(prefix + ".note", rep.note));
      continue;
    }
    if (rep.classification) {
      report.add(CheckRecord::quantity(prefix + ".structure_algebra",
                                    label_string(*rep.classification),
                                    rep.classification->completely_solvable_confidence));
    }
    if (!rep.note.empty()) report.add(CheckRecord::info(prefix + ".note", rep.note));
  }
}

void deformation_pipeline(const SpecDocument& doc, Report& report) {
  ZeroContext ctx = doc.zero_context();
  Stopwatch timer(report, "deformation");
  DeformationFamily family = family_of(doc);
  DeformationReport scan = deformation_scan(family, doc.grid, ctx.seed);
  for (const auto& entry : scan.entries) {
    std::string name = "t=" + to_string(entry.t);
    if (!entry.jacobi_ok) {
      report.add(CheckRecord::assertion(name + ".jacobi", false, Confidence::Exact));
      continue;
    }
    report.add(CheckRecord::quantity(name, label_string(*entry.label),
                                  entry.label->completely_solvable_confidence));
  }
  std::ostringstream os;
  if (scan.transitions.empty()) {
    os << "none";
  } else {
    for (std::size_t i = 0; i < scan.transitions.size(); ++i) {
      const auto& e = scan.entries[scan.transitions[i]];
      const auto& prev = scan.entries[scan.transitions[i] - 1];
      if (i) os << "; ";
      os << prev.label->model << " -> " << e.label->model << " at t=" << to_string(e.t);
    }
  }
  report.add(CheckRecord::quantity("transitions", os.str()));
}

Report make_report(const SpecDocument& doc) {
  Report report;
  report.kind = doc.kind;
  report.seed = doc.seed;
  return report;
}

}  // namespace

Report run_check(const SpecDocument& doc) {
  Report report = make_report(doc);
  if (doc.kind == "lie_group") {
    lie_group_pipeline(doc, report);
  } else if (doc.kind == "deformation") {
    deformation_pipeline(doc, report);
  } else {
    walker_pipeline(doc, report);
  }
  return report;
}

Report run_curvature(const SpecDocument& doc, const std::optional<Point>& at) {
  if (doc.kind == "lie_group" || doc.kind == "deformation")
    throw ValidationError("curvature requires a Walker-metric document");
  Report report = make_report(doc);
  WalkerTensors t = compute_tensors(doc, report);
  record_tensors(report, t);
  if (at) {
    for (const auto& name : t.g.chart.names()) {
      if (!at->has(name)) throw ValidationError("--at misses coordinate '" + name + "'");
    }
    int n = t.g.dim();
    std::ostringstream ric_os, scal_os;
    ric_os << "[";
    for (int i = 0; i < n; ++i) {
      ric_os << (i ? ", [" : "[");
      for (int j = 0; j < n; ++j) {
        ric_os << (j ? ", " : "")
               << evaluate(t.ric.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                           *at);
      }
      ric_os << "]";
    }
    ric_os << "]";
    scal_os << evaluate(t.scal, *at);
    report.tensors.emplace_back("ricci_at", ric_os.str());
    report.tensors.emplace_back("scal_at", scal_os.str());
  }
  return report;
}

Report run_classify(const SpecDocument& doc) {
  Report report = make_report(doc);
  if (doc.kind == "lie_group") {
    LieAlgebra algebra = algebra_of(doc);
    JacobiResult jac = jacobi_check(algebra);
    report.add(CheckRecord::assertion("jacobi", jac.ok, Confidence::Exact));
    if (jac.ok) {
      ClassificationLabel label = classify(algebra, doc.seed);
      report.add(CheckRecord::quantity("classification", label_string(label),
                                    label.completely_solvable_confidence));
      std::ostringstream der, low;
      for (int d : derived_series(algebra)) der << d << " ";
      for (int d : lower_central_series(algebra)) low << d << " ";
      report.add(CheckRecord::quantity("derived_series", der.str()));
      report.add(CheckRecord::quantity("lower_central_series", low.str()));
      if (!label.witness_note.empty())
        report.add(CheckRecord::info("spectrum_witness", label.witness_note));
    }
  } else if (doc.kind == "deformation") {
    deformation_pipeline(doc, report);
  } else {
    throw ValidationError("classify requires a lie_group or deformation document");
  }
  return report;
}

Report run_develop(const SpecDocument& doc) {
  if (doc.kind == "lie_group" || doc.kind == "deformation")
    throw ValidationError("develop requires a Walker-metric document");
  if (doc.curves.empty()) throw ValidationError("develop requires a \"curves\" array");
  Report report = make_report(doc);
  ZeroContext ctx = doc.zero_context();
  WalkerSpec spec = walker_spec_of(doc);
  MetricTensor g = build_metric(spec, ctx);
  Verdict strict = is_strict(spec, ctx);
  if (!strict.value)
    throw ValidationError("develop needs a strict form (parallel coordinate frame)");
  std::vector<VectorField> frame, complement;
  for (int i = 0; i < spec.rank; ++i) frame.push_back(coordinate_field(g.chart, i));
  for (int i = spec.rank; i < g.dim(); ++i) complement.push_back(coordinate_field(g.chart, i));
  Confidence how = Confidence::Exact;
  LieAlgebra algebra = structure_algebra(frame, g, ctx, &how);
  MaurerCartanForm form = build_mc_form(frame, complement, algebra, ctx);
  report.add(CheckRecord::assertion("maurer_cartan", mc_check(form, ctx)));
  GroupRepresentation rep = representation_for(algebra, doc);
  for (std::size_t ci = 0; ci < doc.curves.size(); ++ci) {
    Curve curve = curve_of(doc.curves[ci], g.chart);
    DevelopResult res = develop(form, curve, rep);
    std::ostringstream os;
    if (res.abelian_exact) {
      os << "[";
      for (std::size_t i = 0; i < res.abelian_exact->size(); ++i)
        os << (i ? ", " : "") << to_string((*res.abelian_exact)[i]);
      os << "] (exact line integrals)";
    } else if (res.abelian_log) {
      os << "[";
      for (std::size_t i = 0; i < res.abelian_log->size(); ++i)
        os << (i ? ", " : "") << (*res.abelian_log)[i];
      os << "]";
    } else {
      os << "group element computed (" << res.steps << " steps)";
    }
    report.add(CheckRecord::quantity("develop[" + std::to_string(ci) + "]", os.str()));
  }
  if (doc.curves.size() >= 2) {
    Curve a = curve_of(doc.curves[0], g.chart);
    Curve b = curve_of(doc.curves[1], g.chart);
    try {
      Verdict pi = path_independence_check(form, a, b, rep);
      report.add(CheckRecord::assertion("path_independence", pi));
    } catch (const ValidationError&) {
      report.add(CheckRecord::info("path_independence", "curves do not share endpoints; skipped"));
    }
  }
  return report;
}

Report run_deform(const SpecDocument& doc) {
  if (doc.kind != "deformation") throw ValidationError("deform requires a deformation document");
  Report report = make_report(doc);
  deformation_pipeline(doc, report);
  return report;
}

}  // namespace walkerlie
