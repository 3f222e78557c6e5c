#include "walkerlie/distribution.hpp"

#include <random>
#include <sstream>

#include "walkerlie/curvature.hpp"

namespace walkerlie {

namespace {

std::string point_string(const Point& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : p.values()) {
    if (!first) os << ", ";
    os << k << "=" << v;
    first = false;
  }
  return os.str();
}

// Sampled chart points for rank and membership probes. When `stratified`,
// the tail of the sample clamps one coordinate at a time to zero so
// behaviour on the coordinate hyperplanes is exercised too.
std::vector<Point> sample_points(const Chart& chart, int count, std::uint64_t seed,
                                 bool stratified) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<Point> pts;
  int clamped = stratified ? std::min(count / 4, chart.dim()) : 0;
  for (int i = 0; i < count; ++i) {
    Point p;
    for (const auto& n : chart.names()) p.set(n, dist(rng));
    if (i >= count - clamped) {
      p.set(chart.name((i - (count - clamped)) % chart.dim()), 0.0);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

NumMatrix field_matrix_at(const std::vector<VectorField>& fields, const Point& p) {
  std::size_t n = fields[0].components.size();
  NumMatrix m(n, NumVector(fields.size(), 0.0));
  for (std::size_t c = 0; c < fields.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      m[r][c] = evaluate(fields[c].components[r], p);
    }
  }
  return m;
}

bool constant_components(const std::vector<VectorField>& fields) {
  for (const auto& f : fields) {
    for (const auto& e : f.components) {
      if (e->kind != ExprKind::Constant) return false;
    }
  }
  return true;
}

RatMatrix rational_field_matrix(const std::vector<VectorField>& fields) {
  std::size_t n = fields[0].components.size();
  RatMatrix m(n, RatVector(fields.size(), Rational(0)));
  for (std::size_t c = 0; c < fields.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) m[r][c] = fields[c].components[r]->value;
  }
  return m;
}

// nabla_{d/dx_i} X for all i, as fields.
std::vector<VectorField> coordinate_derivatives(const VectorField& x,
                                                const ConnectionCoefficients& conn) {
  const Chart& chart = x.chart;
  int n = chart.dim();
  std::vector<VectorField> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ExprVector comps(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      std::vector<ExprPtr> terms;
      terms.push_back(differentiate(x.components[static_cast<std::size_t>(k)], chart.name(i)));
      for (int j = 0; j < n; ++j) {
        const ExprPtr& gkij = conn.at(k, i, j);
        if (is_constant(gkij, 0) || is_constant(x.components[static_cast<std::size_t>(j)], 0))
          continue;
        terms.push_back(product(gkij, x.components[static_cast<std::size_t>(j)]));
      }
      comps[static_cast<std::size_t>(k)] = simplify(sum(std::move(terms)));
    }
    out.emplace_back(chart, std::move(comps));
  }
  return out;
}

}  // namespace

VectorField::VectorField(Chart c, ExprVector comps) : chart(std::move(c)), components() {
  if (static_cast<int>(comps.size()) != chart.dim())
    throw ValidationError("vector field component count differs from chart dimension");
  components.reserve(comps.size());
  for (auto& e : comps) {
    for (const auto& v : free_variables(e)) {
      if (!chart.index_of(v))
        throw ValidationError("vector field component uses '" + v + "' outside the chart");
    }
    components.push_back(simplify(e));
  }
}

VectorField coordinate_field(const Chart& chart, int index) {
  ExprVector comps(static_cast<std::size_t>(chart.dim()), constant(0));
  comps.at(static_cast<std::size_t>(index)) = constant(1);
  return VectorField(chart, std::move(comps));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (!(x.chart == y.chart)) throw ValidationError("bracket of fields on different charts");
  const Chart& chart = x.chart;
  int n = chart.dim();
  ExprVector comps(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<ExprPtr> terms;
    for (int m = 0; m < n; ++m) {
      terms.push_back(product(x.components[static_cast<std::size_t>(m)],
                              differentiate(y.components[static_cast<std::size_t>(k)], chart.name(m))));
      terms.push_back(negate(product(
          y.components[static_cast<std::size_t>(m)],
          differentiate(x.components[static_cast<std::size_t>(k)], chart.name(m)))));
    }
    comps[static_cast<std::size_t>(k)] = simplify(sum(std::move(terms)));
  }
  return VectorField(chart, std::move(comps));
}

Distribution Distribution::create(Chart chart, std::vector<VectorField> fields, int rank,
                                  bool walker_candidate, const ZeroContext& ctx) {
  if (fields.empty()) throw ValidationError("distribution needs at least one spanning field");
  if (static_cast<int>(fields.size()) != rank)
    throw ValidationError("spanning set size differs from declared rank");
  for (const auto& f : fields) {
    if (!(f.chart == chart)) throw ValidationError("spanning field lives on a different chart");
  }
  if (walker_candidate && 2 * rank > chart.dim()) {
    throw ValidationError("rank exceeds half the dimension for a null distribution");
  }
  for (const auto& p : sample_points(chart, 16, ctx.seed ^ 0xd15ul, /*stratified=*/false)) {
    NumMatrix m;
    try {
      m = field_matrix_at(fields, p);
    } catch (const EvalError&) {
      continue;
    }
    if (num_rank(m, ctx.tol) != rank) {
      throw ValidationError("spanning set drops rank at sampled point (" + point_string(p) + ")");
    }
  }
  return Distribution(std::move(chart), std::move(fields), rank);
}

Verdict span_membership(const std::vector<VectorField>& span, const VectorField& v,
                        const ZeroContext& ctx) {
  if (span.empty()) throw ValidationError("empty spanning set");
  const Chart& chart = v.chart;
  if (constant_components(span)) {
    // Exact path: v lies in the constant span everywhere iff all
    // complementary linear conditions annihilate it identically.
    RatMatrix f = rational_field_matrix(span);
    RatMatrix ft(f[0].size(), RatVector(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f[0].size(); ++j) ft[j][i] = f[i][j];
    Verdict out = Verdict::pass();
    for (const auto& w : rat_nullspace(ft)) {
      std::vector<ExprPtr> terms;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] == 0) continue;
        terms.push_back(scale(w[j], v.components[j]));
      }
      out.merge(is_zero(sum(std::move(terms)), ctx));
    }
    return out;
  }
  // Sampled path: pointwise membership at 16 points, stratified so that
  // coordinate hyperplanes are probed.
  Verdict out = Verdict::pass(Confidence::Probabilistic);
  for (const auto& p : sample_points(chart, 16, ctx.seed ^ 0x3e3ul, /*stratified=*/true)) {
    NumMatrix m;
    NumVector rhs(static_cast<std::size_t>(chart.dim()));
    try {
      m = field_matrix_at(span, p);
      for (int k = 0; k < chart.dim(); ++k)
        rhs[static_cast<std::size_t>(k)] = evaluate(v.components[static_cast<std::size_t>(k)], p);
    } catch (const EvalError&) {
      continue;
    }
    if (num_span_residual(m, rhs) > ctx.tol) {
      return Verdict::fail(Confidence::Probabilistic, p);
    }
  }
  return out;
}

Verdict is_totally_isotropic(const Distribution& d, const MetricTensor& g, const ZeroContext& ctx) {
  if (!(d.chart() == g.chart)) throw ValidationError("distribution chart differs from metric chart");
  int n = g.dim();
  Verdict out = Verdict::pass();
  const auto& fields = d.fields();
  for (std::size_t a = 0; a < fields.size(); ++a) {
    for (std::size_t b = a; b < fields.size(); ++b) {
      std::vector<ExprPtr> terms;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const ExprPtr& gij = g.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (is_constant(gij, 0)) continue;
          terms.push_back(product({fields[a].components[static_cast<std::size_t>(i)],
                                   fields[b].components[static_cast<std::size_t>(j)], gij}));
        }
      }
      out.merge(is_zero(sum(std::move(terms)), ctx));
    }
  }
  return out;
}

Verdict is_involutive(const Distribution& d, const ZeroContext& ctx) {
  const auto& fields = d.fields();
  Verdict out = Verdict::pass();
  for (std::size_t a = 0; a < fields.size(); ++a) {
    for (std::size_t b = a + 1; b < fields.size(); ++b) {
      VectorField br = lie_bracket(fields[a], fields[b]);
      out.merge(span_membership(fields, br, ctx));
    }
  }
  return out;
}

Verdict is_parallel(const Distribution& d, const MetricTensor& g, const ZeroContext& ctx) {
  if (!(d.chart() == g.chart)) throw ValidationError("distribution chart differs from metric chart");
  ConnectionCoefficients conn = christoffel(g, invert(g, ctx));
  Verdict out = Verdict::pass();
  for (const auto& x : d.fields()) {
    for (const auto& dx : coordinate_derivatives(x, conn)) {
      out.merge(span_membership(d.fields(), dx, ctx));
    }
  }
  return out;
}

Verdict is_parallel_frame(const std::vector<VectorField>& fields, const MetricTensor& g,
                          const ZeroContext& ctx) {
  if (fields.empty()) throw ValidationError("empty frame");
  ConnectionCoefficients conn = christoffel(g, invert(g, ctx));
  Verdict out = Verdict::pass();
  for (const auto& x : fields) {
    for (const auto& dx : coordinate_derivatives(x, conn)) {
      for (const auto& comp : dx.components) out.merge(is_zero(comp, ctx));
    }
  }
  return out;
}

Distribution orthogonal_complement(const Distribution& d, const MetricTensor& g,
                                   const ZeroContext& ctx) {
  if (!(d.chart() == g.chart)) throw ValidationError("distribution chart differs from metric chart");
  int n = g.dim();
  const auto& fields = d.fields();
  // Condition matrix: row a gives g(X_a, .) as a covector.
  ExprMatrix cond(fields.size(), ExprVector(static_cast<std::size_t>(n)));
  for (std::size_t a = 0; a < fields.size(); ++a) {
    for (int j = 0; j < n; ++j) {
      std::vector<ExprPtr> terms;
      for (int k = 0; k < n; ++k) {
        const ExprPtr& gkj = g.components[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (is_constant(gkj, 0)) continue;
        terms.push_back(product(fields[a].components[static_cast<std::size_t>(k)], gkj));
      }
      cond[a][static_cast<std::size_t>(j)] = simplify(sum(std::move(terms)));
    }
  }
  // The conditions must keep full rank at sampled points.
  for (const auto& p : sample_points(d.chart(), 8, ctx.seed ^ 0x0c0ul, false)) {
    NumMatrix m(cond.size(), NumVector(static_cast<std::size_t>(n)));
    bool ok = true;
    for (std::size_t a = 0; a < cond.size() && ok; ++a) {
      for (int j = 0; j < n && ok; ++j) {
        try {
          m[a][static_cast<std::size_t>(j)] = evaluate(cond[a][static_cast<std::size_t>(j)], p);
        } catch (const EvalError&) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    if (num_rank(m, ctx.tol) != static_cast<int>(fields.size())) {
      throw ValidationError("orthogonality conditions drop rank at sampled point (" +
                            point_string(p) + ")");
    }
  }
  std::vector<ExprVector> basis = expr_nullspace(cond, ctx);
  std::vector<VectorField> complement_fields;
  complement_fields.reserve(basis.size());
  for (auto& v : basis) complement_fields.emplace_back(d.chart(), std::move(v));
  return Distribution::create(d.chart(), std::move(complement_fields),
                              static_cast<int>(basis.size()), false, ctx);
}

TransverseConnection transverse_connection(const MetricTensor& g, const Distribution& d,
                                           const std::vector<VectorField>& complement,
                                           const ZeroContext& ctx) {
  Verdict par = is_parallel(d, g, ctx);
  if (!par.value) {
    std::string diag = "distribution is not parallel";
    if (par.witness) diag += " (witness " + point_string(*par.witness) + ")";
    throw PreconditionError(diag);
  }
  int n = g.dim();
  int r = d.rank();
  if (static_cast<int>(complement.size()) != n - r)
    throw ValidationError("complement must have n - r fields");

  // Frame matrix with the distribution fields first, complement after.
  ExprMatrix frame = expr_zero_matrix(n, n);
  for (int c = 0; c < r; ++c)
    for (int row = 0; row < n; ++row)
      frame[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] =
          d.fields()[static_cast<std::size_t>(c)].components[static_cast<std::size_t>(row)];
  for (int c = 0; c < n - r; ++c)
    for (int row = 0; row < n; ++row)
      frame[static_cast<std::size_t>(row)][static_cast<std::size_t>(r + c)] =
          complement[static_cast<std::size_t>(c)].components[static_cast<std::size_t>(row)];
  {
    std::vector<VectorField> joint = d.fields();
    joint.insert(joint.end(), complement.begin(), complement.end());
    for (const auto& p : sample_points(g.chart, 8, ctx.seed ^ 0xf7a1ul, false)) {
      try {
        if (num_rank(field_matrix_at(joint, p), ctx.tol) != n) {
          throw ValidationError("frame is rank-deficient at sampled point (" + point_string(p) +
                                ")");
        }
      } catch (const EvalError&) {
        continue;
      }
    }
  }

  ConnectionCoefficients conn = christoffel(g, invert(g, ctx));
  auto project = [&](const VectorField& w) -> ExprVector {
    auto sol = expr_solve(frame, w.components, ctx);
    if (!sol) throw InternalError("could not express a derivative in the chosen frame");
    return ExprVector(sol->begin() + r, sol->end());
  };

  TransverseConnection out;
  out.complement = complement;
  out.coefficients.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    out.coefficients[static_cast<std::size_t>(i)].reserve(complement.size());
  }
  std::vector<std::vector<ExprVector>> base(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < complement.size(); ++b) {
    auto derivs = coordinate_derivatives(complement[b], conn);
    for (int i = 0; i < n; ++i) {
      out.coefficients[static_cast<std::size_t>(i)].push_back(project(derivs[static_cast<std::size_t>(i)]));
    }
  }

  // Well-definedness: shifting a lift by any spanning field of the
  // distribution must not change the complement coefficients.
  for (std::size_t b = 0; b < complement.size(); ++b) {
    for (const auto& z : d.fields()) {
      ExprVector shifted_comps(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        shifted_comps[static_cast<std::size_t>(k)] =
            simplify(sum(complement[b].components[static_cast<std::size_t>(k)],
                         z.components[static_cast<std::size_t>(k)]));
      }
      VectorField shifted(g.chart, std::move(shifted_comps));
      auto derivs = coordinate_derivatives(shifted, conn);
      for (int i = 0; i < n; ++i) {
        ExprVector coeffs = project(derivs[static_cast<std::size_t>(i)]);
        for (std::size_t c = 0; c < coeffs.size(); ++c) {
          ExprPtr diff = difference(coeffs[c], out.coefficients[static_cast<std::size_t>(i)][b][c]);
          if (!is_zero(diff, ctx).zero) {
            throw InternalError("transverse connection depends on the choice of lift");
          }
        }
      }
    }
  }
  return out;
}

}  // namespace walkerlie
