#include "walkerlie/foliation.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "walkerlie/curvature.hpp"

namespace walkerlie {

namespace {

std::vector<Point> chart_samples(const Chart& chart, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) {
    Point p;
    for (const auto& n : chart.names()) p.set(n, dist(rng));
    pts.push_back(std::move(p));
  }
  return pts;
}

NumMatrix to_num(const RatMatrix& m) {
  NumMatrix out(m.size(), NumVector(m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[0].size(); ++j) out[i][j] = to_double(m[i][j]);
  return out;
}

NumMatrix num_identity(int n) {
  NumMatrix m(static_cast<std::size_t>(n), NumVector(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  return m;
}

NumMatrix mat_mul(const NumMatrix& a, const NumMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  NumMatrix out(n, NumVector(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      double f = a[i][l];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += f * b[l][j];
    }
  return out;
}

NumMatrix mat_axpy(const NumMatrix& base, double s, const NumMatrix& delta) {
  NumMatrix out = base;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out[0].size(); ++j) out[i][j] += s * delta[i][j];
  return out;
}

double mat_max_norm(const NumMatrix& a, const NumMatrix& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

// Classical fourth-order step for M' = M A(t), with Simpson quadrature of
// the algebra components accumulated alongside for abelian targets.
struct Integrator {
  std::function<void(double, NumVector&)> pullback;  // t -> algebra components
  std::vector<NumMatrix> gens;                       // generator matrices as doubles
  int msize;

  NumMatrix a_of(double t, NumVector& comps) const {
    pullback(t, comps);
    NumMatrix a(static_cast<std::size_t>(msize), NumVector(static_cast<std::size_t>(msize), 0.0));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      double f = comps[i];
      if (f == 0.0) continue;
      for (int r = 0; r < msize; ++r)
        for (int c = 0; c < msize; ++c)
          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
              f * gens[i][static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return a;
  }

  void run(double t0, double t1, long steps, NumMatrix& m, NumVector& quadrature) const {
    double h = (t1 - t0) / static_cast<double>(steps);
    NumVector c0(gens.size()), ch(gens.size()), c1(gens.size());
    for (long s = 0; s < steps; ++s) {
      double t = t0 + h * static_cast<double>(s);
      NumMatrix a0 = a_of(t, c0);
      NumMatrix ah = a_of(t + h / 2, ch);
      NumMatrix a1 = a_of(t + h, c1);
      NumMatrix k1 = mat_mul(m, a0);
      NumMatrix k2 = mat_mul(mat_axpy(m, h / 2, k1), ah);
      NumMatrix k3 = mat_mul(mat_axpy(m, h / 2, k2), ah);
      NumMatrix k4 = mat_mul(mat_axpy(m, h, k3), a1);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j)
          m[i][j] += h / 6.0 * (k1[i][j] + 2 * k2[i][j] + 2 * k3[i][j] + k4[i][j]);
      for (std::size_t i = 0; i < quadrature.size(); ++i)
        quadrature[i] += h / 6.0 * (c0[i] + 4 * ch[i] + c1[i]);
    }
  }
};

std::string fresh_parameter(const Chart& chart) {
  std::string name = "s";
  while (chart.index_of(name)) name += "_";
  return name;
}

/// Ascending coefficients when the expression is a polynomial in `var`
/// (all other symbols already substituted away); nullopt otherwise.
std::optional<std::vector<Rational>> poly_coefficients(const ExprPtr& e, const std::string& var,
                                                       int max_degree = 40) {
  std::vector<Rational> coeffs;
  ExprPtr cur = simplify(e);
  Rational factorial(1);
  for (int k = 0; k <= max_degree; ++k) {
    if (k > 0) {
      factorial *= k;
      cur = differentiate(cur, var);
    }
    if (is_constant(cur, 0)) break;
    auto value = constant_value(substitute(cur, var, constant(0)));
    if (!value) return std::nullopt;
    coeffs.resize(static_cast<std::size_t>(k) + 1, Rational(0));
    coeffs[static_cast<std::size_t>(k)] = *value / factorial;
    if (k == max_degree) return std::nullopt;  // not polynomial within the cap
  }
  return coeffs;
}

}  // namespace

MaurerCartanForm build_mc_form(const std::vector<VectorField>& frame,
                               const std::vector<VectorField>& complement, const LieAlgebra& l,
                               const ZeroContext& ctx) {
  if (frame.empty()) throw ValidationError("empty frame");
  const Chart& chart = frame[0].chart;
  int n = chart.dim();
  int r = static_cast<int>(frame.size());
  if (l.dim() != r) throw ValidationError("algebra dimension differs from frame size");
  if (r + static_cast<int>(complement.size()) != n)
    throw ValidationError("frame and complement must jointly span the tangent space");

  ExprMatrix f = expr_zero_matrix(n, n);
  std::vector<VectorField> joint = frame;
  joint.insert(joint.end(), complement.begin(), complement.end());
  for (int c = 0; c < n; ++c)
    for (int row = 0; row < n; ++row)
      f[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] =
          joint[static_cast<std::size_t>(c)].components[static_cast<std::size_t>(row)];

  for (const auto& p : chart_samples(chart, 8, ctx.seed ^ 0x88eul)) {
    NumMatrix m(static_cast<std::size_t>(n), NumVector(static_cast<std::size_t>(n)));
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        try {
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              evaluate(f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p);
        } catch (const EvalError&) {
          ok = false;
        }
      }
    if (!ok) continue;
    if (num_rank(m, ctx.tol) != n) {
      std::ostringstream os;
      os << "joint frame is rank-deficient at a sampled point";
      throw ValidationError(os.str());
    }
  }

  ZeroResult det_zero = is_zero(expr_determinant(f), ctx);
  if (det_zero.zero) throw ValidationError("joint frame is degenerate");
  ExprMatrix finv = expr_inverse(f);

  MaurerCartanForm out{chart, l, {}};
  out.omega.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    ExprVector row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      row[static_cast<std::size_t>(j)] = simplify(finv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    out.omega.push_back(std::move(row));
  }
  // Pointwise surjectivity onto the algebra.
  for (const auto& p : chart_samples(chart, 8, ctx.seed ^ 0x0357ul)) {
    NumMatrix m(static_cast<std::size_t>(r), NumVector(static_cast<std::size_t>(n)));
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        try {
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              evaluate(out.omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p);
        } catch (const EvalError&) {
          ok = false;
        }
      }
    if (ok && num_rank(m, ctx.tol) != r)
      throw ValidationError("coframe is not surjective at a sampled point");
  }
  return out;
}

Verdict mc_check(const MaurerCartanForm& form, const ZeroContext& ctx) {
  int n = form.chart.dim();
  int r = form.rank();
  if (!form.algebra.exact())
    throw ValidationError("the structure equation check needs exact constants");
  Verdict out = Verdict::pass();
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::vector<ExprPtr> terms;
        terms.push_back(differentiate(form.omega[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)],
                                      form.chart.name(i)));
        terms.push_back(negate(differentiate(
            form.omega[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], form.chart.name(j))));
        for (int a = 0; a < r; ++a) {
          for (int b = 0; b < r; ++b) {
            const Rational& cab = form.algebra.c(k, a, b);
            if (cab == 0) continue;
            terms.push_back(scale(
                cab, product(form.omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)],
                             form.omega[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)])));
          }
        }
        out.merge(is_zero(sum(std::move(terms)), ctx));
      }
    }
  }
  return out;
}

GroupRepresentation GroupRepresentation::create(const LieAlgebra& l, int size,
                                                std::vector<RatMatrix> gens) {
  if (!l.exact()) throw ValidationError("representation check needs exact constants");
  if (static_cast<int>(gens.size()) != l.dim())
    throw ValidationError("one generator per algebra basis vector required");
  for (const auto& m : gens) {
    if (static_cast<int>(m.size()) != size) throw ValidationError("generator has wrong size");
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != size) throw ValidationError("generator is not square");
  }
  int r = l.dim();
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
          Rational lhs(0);
          for (int m = 0; m < size; ++m) {
            lhs += gens[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] *
                   gens[static_cast<std::size_t>(b)][static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
            lhs -= gens[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] *
                   gens[static_cast<std::size_t>(a)][static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
          }
          Rational rhs(0);
          for (int k = 0; k < r; ++k) {
            const Rational& c = l.c(k, a, b);
            if (c == 0) continue;
            rhs += c * gens[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          }
          if (lhs != rhs)
            throw ValidationError("matrices do not represent the bracket relations");
        }
      }
    }
  }
  return GroupRepresentation{size, std::move(gens)};
}

GroupRepresentation GroupRepresentation::abelian(int r) {
  std::vector<RatMatrix> gens;
  for (int i = 0; i < r; ++i) {
    RatMatrix m(static_cast<std::size_t>(r) + 1, RatVector(static_cast<std::size_t>(r) + 1, Rational(0)));
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] = 1;
    gens.push_back(std::move(m));
  }
  return create(LieAlgebra::abelian(r), r + 1, std::move(gens));
}

GroupRepresentation GroupRepresentation::heisenberg(const LieAlgebra& l) {
  auto unit = [](int i, int j) {
    RatMatrix m(3, RatVector(3, Rational(0)));
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    return m;
  };
  return create(l, 3, {unit(0, 1), unit(1, 2), unit(0, 2)});
}

GroupRepresentation GroupRepresentation::affine(const LieAlgebra& l) {
  RatMatrix m1(2, RatVector(2, Rational(0)));
  m1[0][1] = 1;
  RatMatrix m2(2, RatVector(2, Rational(0)));
  m2[0][0] = -1;
  return create(l, 2, {m1, m2});
}

Point Curve::start() const {
  if (std::holds_alternative<PolylineCurve>(shape)) {
    return std::get<PolylineCurve>(shape).vertices.front();
  }
  const auto& par = std::get<ParametricCurve>(shape);
  Point p;
  for (int j = 0; j < chart.dim(); ++j) {
    Point t;
    t.set(par.parameter, par.t_begin);
    p.set(chart.name(j), evaluate(par.components[static_cast<std::size_t>(j)], t));
  }
  return p;
}

Point Curve::end() const {
  if (std::holds_alternative<PolylineCurve>(shape)) {
    return std::get<PolylineCurve>(shape).vertices.back();
  }
  const auto& par = std::get<ParametricCurve>(shape);
  Point p;
  for (int j = 0; j < chart.dim(); ++j) {
    Point t;
    t.set(par.parameter, par.t_end);
    p.set(chart.name(j), evaluate(par.components[static_cast<std::size_t>(j)], t));
  }
  return p;
}

Curve polyline_curve(const Chart& chart, std::vector<Point> vertices) {
  if (vertices.size() < 2) throw ValidationError("polyline needs at least two vertices");
  for (const auto& v : vertices)
    for (const auto& name : chart.names())
      if (!v.has(name)) throw ValidationError("polyline vertex misses coordinate '" + name + "'");
  return Curve{chart, PolylineCurve{std::move(vertices)}};
}

Curve parametric_curve(const Chart& chart, const std::string& parameter, ExprVector components,
                       double t_begin, double t_end) {
  if (static_cast<int>(components.size()) != chart.dim())
    throw ValidationError("parametric curve needs one component per coordinate");
  for (const auto& e : components) {
    for (const auto& v : free_variables(e)) {
      if (v != parameter) throw ValidationError("curve component uses '" + v + "'");
    }
  }
  return Curve{chart, ParametricCurve{parameter, std::move(components), t_begin, t_end}};
}

DevelopResult develop(const MaurerCartanForm& form, const Curve& curve,
                      const GroupRepresentation& rep, double step_fraction) {
  if (rep.generators.size() != static_cast<std::size_t>(form.rank()))
    throw ValidationError("representation size differs from algebra rank");
  if (!(curve.chart == form.chart)) throw ValidationError("curve chart differs from form chart");
  if (step_fraction <= 0 || step_fraction > 0.5) throw ValidationError("invalid step fraction");
  int n = form.chart.dim();
  int r = form.rank();

  Integrator integ;
  integ.msize = rep.size;
  for (const auto& g : rep.generators) integ.gens.push_back(to_num(g));

  bool abelian = true;
  for (int k = 0; k < r && abelian; ++k)
    for (int i = 0; i < r && abelian; ++i)
      for (int j = 0; j < r && abelian; ++j)
        if (form.algebra.c(k, i, j) != 0) abelian = false;

  NumMatrix element = num_identity(rep.size);
  NumVector quadrature(static_cast<std::size_t>(r), 0.0);
  long total_steps = 0;
  long steps_per_unit = static_cast<long>(std::ceil(1.0 / step_fraction));

  auto eval_omega = [&](const Point& p, const NumVector& velocity, NumVector& out) {
    for (int i = 0; i < r; ++i) {
      double acc = 0;
      for (int j = 0; j < n; ++j) {
        double w = evaluate(form.omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p);
        acc += w * velocity[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(i)] = acc;
    }
  };

  if (std::holds_alternative<PolylineCurve>(curve.shape)) {
    const auto& verts = std::get<PolylineCurve>(curve.shape).vertices;
    for (std::size_t s = 0; s + 1 < verts.size(); ++s) {
      const Point& a = verts[s];
      const Point& b = verts[s + 1];
      NumVector vel(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        vel[static_cast<std::size_t>(j)] = b.at(form.chart.name(j)) - a.at(form.chart.name(j));
      integ.pullback = [&](double t, NumVector& out) {
        Point p;
        for (int j = 0; j < n; ++j) {
          const std::string& name = form.chart.name(j);
          p.set(name, a.at(name) + t * vel[static_cast<std::size_t>(j)]);
        }
        eval_omega(p, vel, out);
      };
      NumMatrix seg = num_identity(rep.size);
      integ.run(0.0, 1.0, steps_per_unit, seg, quadrature);
      element = mat_mul(element, seg);  // later segments act from the right
      total_steps += steps_per_unit;
    }
  } else {
    const auto& par = std::get<ParametricCurve>(curve.shape);
    ExprVector velocity(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      velocity[static_cast<std::size_t>(j)] =
          differentiate(par.components[static_cast<std::size_t>(j)], par.parameter);
    integ.pullback = [&](double t, NumVector& out) {
      Point tp;
      tp.set(par.parameter, t);
      Point p;
      NumVector vel(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        p.set(form.chart.name(j), evaluate(par.components[static_cast<std::size_t>(j)], tp));
        vel[static_cast<std::size_t>(j)] = evaluate(velocity[static_cast<std::size_t>(j)], tp);
      }
      eval_omega(p, vel, out);
    };
    integ.run(par.t_begin, par.t_end, steps_per_unit, element, quadrature);
    total_steps = steps_per_unit;
  }

  DevelopResult out;
  out.element = std::move(element);
  out.steps = total_steps;
  if (abelian) {
    out.abelian_log = quadrature;
    // Exact line integrals for polynomial pullbacks over polylines.
    if (std::holds_alternative<PolylineCurve>(curve.shape)) {
      const auto& verts = std::get<PolylineCurve>(curve.shape).vertices;
      std::string s = fresh_parameter(form.chart);
      std::vector<Rational> exact(static_cast<std::size_t>(r), Rational(0));
      bool ok = true;
      for (std::size_t seg = 0; seg + 1 < verts.size() && ok; ++seg) {
        const Point& a = verts[seg];
        const Point& b = verts[seg + 1];
        for (int i = 0; i < r && ok; ++i) {
          std::vector<ExprPtr> terms;
          for (int j = 0; j < n; ++j) {
            Rational pj = rational_from_double(a.at(form.chart.name(j)));
            Rational dj = rational_from_double(b.at(form.chart.name(j))) - pj;
            ExprPtr entry = form.omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (dj == 0 || is_constant(entry, 0)) continue;
            ExprPtr pulled = entry;
            for (int m = 0; m < n; ++m) {
              Rational pm = rational_from_double(a.at(form.chart.name(m)));
              Rational dm = rational_from_double(b.at(form.chart.name(m))) - pm;
              ExprPtr path = sum(constant(pm), scale(dm, Expr::make_variable(s)));
              pulled = substitute(pulled, form.chart.name(m), path);
            }
            terms.push_back(scale(dj, pulled));
          }
          auto coeffs = poly_coefficients(sum(std::move(terms)), s);
          if (!coeffs) {
            ok = false;
            break;
          }
          for (std::size_t k = 0; k < coeffs->size(); ++k) {
            exact[static_cast<std::size_t>(i)] +=
                (*coeffs)[k] / Rational(static_cast<long>(k) + 1);
          }
        }
      }
      if (ok) out.abelian_exact = std::move(exact);
    }
  }
  return out;
}

Verdict path_independence_check(const MaurerCartanForm& form, const Curve& a, const Curve& b,
                                const GroupRepresentation& rep, double tol,
                                double step_fraction) {
  Point a0 = a.start(), a1 = a.end(), b0 = b.start(), b1 = b.end();
  for (const auto& name : form.chart.names()) {
    if (std::abs(a0.at(name) - b0.at(name)) > 1e-9 || std::abs(a1.at(name) - b1.at(name)) > 1e-9)
      throw ValidationError("curves do not share endpoints");
  }
  DevelopResult da = develop(form, a, rep, step_fraction);
  DevelopResult db = develop(form, b, rep, step_fraction);
  double diff = mat_max_norm(da.element, db.element);
  Verdict v;
  v.value = diff <= tol;
  v.confidence = Confidence::Probabilistic;
  std::ostringstream os;
  os << "max-norm discrepancy " << diff;
  v.note = os.str();
  return v;
}

DeformationFamily DeformationFamily::create(int dim, std::string parameter,
                                            std::vector<ExprPtr> c, const ZeroContext& ctx) {
  if (static_cast<int>(c.size()) != dim * dim * dim)
    throw ValidationError("family tensor has wrong size");
  for (const auto& e : c) {
    for (const auto& v : free_variables(e)) {
      if (v != parameter)
        throw ValidationError("family constants may only depend on '" + parameter + "'");
    }
  }
  DeformationFamily fam;
  fam.dim = dim;
  fam.parameter = std::move(parameter);
  fam.c = std::move(c);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j) {
        if (!is_zero(sum(fam.at(k, i, j), fam.at(k, j, i)), ctx).zero)
          throw ValidationError("family constants are not antisymmetric");
      }
  return fam;
}

DeformationReport deformation_scan(const DeformationFamily& family,
                                   const std::vector<Rational>& grid, std::uint64_t seed) {
  DeformationReport report;
  int r = family.dim;
  for (const Rational& t : grid) {
    DeformationEntry entry;
    entry.t = t;
    std::vector<Rational> exact(static_cast<std::size_t>(r * r * r), Rational(0));
    std::vector<double> approx(static_cast<std::size_t>(r * r * r), 0.0);
    bool all_exact = true;
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          ExprPtr at_t = substitute(family.at(k, i, j), family.parameter, constant(t));
          std::size_t idx = static_cast<std::size_t>((k * r + i) * r + j);
          if (auto v = ratfunc_constant(at_t)) {
            exact[idx] = *v;
            approx[idx] = to_double(*v);
          } else {
            all_exact = false;
            Point p;
            p.set(family.parameter, to_double(t));
            approx[idx] = evaluate(family.at(k, i, j), p);
          }
        }
    LieAlgebra algebra = all_exact ? LieAlgebra::from_rational(r, std::move(exact))
                                   : LieAlgebra::from_double(r, std::move(approx));
    JacobiResult jac = jacobi_check(algebra);
    entry.jacobi_ok = jac.ok;
    if (jac.ok) entry.label = classify(algebra, seed);
    report.entries.push_back(std::move(entry));
  }
  for (std::size_t i = 1; i < report.entries.size(); ++i) {
    const auto& prev = report.entries[i - 1];
    const auto& cur = report.entries[i];
    if (prev.label && cur.label && prev.label->model != cur.label->model) {
      report.transitions.push_back(i);
    }
  }
  return report;
}

}  // namespace walkerlie
