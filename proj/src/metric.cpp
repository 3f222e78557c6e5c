#include "walkerlie/metric.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace walkerlie {

namespace {

void check_bound(const ExprPtr& e, const Chart& chart, const std::string& what) {
  for (const auto& v : free_variables(e)) {
    if (!chart.index_of(v)) {
      throw ValidationError(what + " uses '" + v + "' which is not a chart coordinate");
    }
  }
}

void check_symmetric_block(const ExprMatrix& m, const std::string& what, const ZeroContext& ctx) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw ValidationError(what + " block is not square");
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!is_zero(difference(m[i][j], m[j][i]), ctx).zero) {
        throw ValidationError(what + " block is not symmetric");
      }
    }
  }
}

// Inertia of a symmetric numeric matrix by symmetric elimination; the
// caller resamples if a pivot degenerates.
std::optional<Signature> numeric_inertia(NumMatrix m, double tol) {
  std::size_t n = m.size();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    // Symmetric pivoting: bring the largest remaining diagonal entry to k.
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i][i]) > std::abs(m[best][best])) best = i;
    }
    if (best != k) {
      std::swap(m[best], m[k]);
      for (std::size_t r = 0; r < n; ++r) std::swap(m[r][best], m[r][k]);
    }
    double p = m[k][k];
    if (std::abs(p) <= tol) return std::nullopt;  // needs an off-diagonal step; resample instead
    if (p > 0) {
      ++sig.plus;
    } else {
      ++sig.minus;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = m[i][k] / p;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      for (std::size_t j = k + 1; j < n; ++j) m[j][i] = m[i][j];
    }
  }
  return sig;
}

Signature block_signature(const ExprMatrix& h, const Chart& chart, const ZeroContext& ctx) {
  std::mt19937_64 rng(ctx.seed ^ 0x5157u);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Point p;
    for (const auto& n : chart.names()) p.set(n, dist(rng));
    NumMatrix m(h.size(), NumVector(h.size(), 0.0));
    bool ok = true;
    for (std::size_t i = 0; i < h.size() && ok; ++i) {
      for (std::size_t j = 0; j < h.size() && ok; ++j) {
        try {
          m[i][j] = evaluate(h[i][j], p);
        } catch (const EvalError&) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    if (auto sig = numeric_inertia(std::move(m), 1e-9)) return *sig;
  }
  throw ValidationError("could not determine the signature of the transverse block");
}

MetricTensor finish_metric(Chart chart, ExprMatrix g, Signature sig, const ZeroContext& ctx) {
  g = simplify_matrix(g);
  ExprPtr det = expr_determinant(g);
  ZeroResult zr = is_zero(det, ctx);
  if (zr.zero) throw SingularMetricError("metric determinant vanishes identically");
  return MetricTensor{std::move(chart), std::move(g), sig};
}

WalkerSpec make_spec(WalkerKind kind, int dimension, int rank, int epsilon, Chart chart) {
  return WalkerSpec{kind, dimension, rank, epsilon, std::move(chart),
                    {}, {}, {}, {}, {}, {}, {}};
}

}  // namespace

ExprMatrix WalkerSpec::quadratic_block() const {
  switch (kind) {
    case WalkerKind::Dim3: return {{f}};
    case WalkerKind::Dim4: return {{a, c}, {c, b}};
    case WalkerKind::General: return b_block;
  }
  return {};
}

WalkerSpec walker3_spec(const ExprPtr& f, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw ValidationError("epsilon must be +1 or -1");
  WalkerSpec spec = make_spec(WalkerKind::Dim3, 3, 1, epsilon, coordinate_chart(3));
  spec.f = simplify(f);
  check_bound(spec.f, spec.chart, "f");
  return spec;
}

WalkerSpec walker4_spec(const ExprPtr& a, const ExprPtr& b, const ExprPtr& c) {
  WalkerSpec spec = make_spec(WalkerKind::Dim4, 4, 2, 1, coordinate_chart(4));
  spec.a = simplify(a);
  spec.b = simplify(b);
  spec.c = simplify(c);
  check_bound(spec.a, spec.chart, "a");
  check_bound(spec.b, spec.chart, "b");
  check_bound(spec.c, spec.chart, "c");
  return spec;
}

WalkerSpec walker_general_spec(const Chart& chart, int rank, const ExprMatrix& h_block,
                               const ExprMatrix& a_block, const ExprMatrix& b_block,
                               const ZeroContext& ctx) {
  int n = chart.dim();
  if (rank < 1) throw ValidationError("rank must be positive");
  if (2 * rank > n) {
    std::ostringstream os;
    os << "rank " << rank << " exceeds half the dimension " << n;
    throw ValidationError(os.str());
  }
  int m = n - 2 * rank;
  auto expect_size = [](const ExprMatrix& mat, std::size_t rows, std::size_t cols,
                        const std::string& what) {
    if (mat.size() != rows) throw ValidationError(what + " block has wrong row count");
    for (const auto& r : mat) {
      if (r.size() != cols) throw ValidationError(what + " block has wrong column count");
    }
  };
  expect_size(h_block, static_cast<std::size_t>(m), static_cast<std::size_t>(m), "h");
  expect_size(a_block, static_cast<std::size_t>(rank), static_cast<std::size_t>(m), "a");
  expect_size(b_block, static_cast<std::size_t>(rank), static_cast<std::size_t>(rank), "b");
  check_symmetric_block(h_block, "h", ctx);
  check_symmetric_block(b_block, "b", ctx);

  WalkerSpec spec = make_spec(WalkerKind::General, n, rank, 1, chart);
  spec.h_block = simplify_matrix(h_block);
  spec.a_block = simplify_matrix(a_block);
  spec.b_block = simplify_matrix(b_block);
  for (const auto& row : spec.h_block)
    for (const auto& e : row) check_bound(e, chart, "h");
  for (const auto& row : spec.a_block)
    for (const auto& e : row) check_bound(e, chart, "a");
  for (const auto& row : spec.b_block)
    for (const auto& e : row) check_bound(e, chart, "b");
  if (m > 0) {
    ExprPtr det_h = expr_determinant(spec.h_block);
    if (is_zero(det_h, ctx).zero) throw ValidationError("transverse block h is degenerate");
  }
  return spec;
}

MetricTensor build_metric(const WalkerSpec& spec, const ZeroContext& ctx) {
  switch (spec.kind) {
    case WalkerKind::Dim3: {
      ExprMatrix g = expr_zero_matrix(3, 3);
      g[0][2] = g[2][0] = constant(1);
      g[1][1] = constant(spec.epsilon);
      g[2][2] = spec.f;
      Signature sig = spec.epsilon == 1 ? Signature{1, 2} : Signature{2, 1};
      return finish_metric(spec.chart, std::move(g), sig, ctx);
    }
    case WalkerKind::Dim4: {
      ExprMatrix g = expr_zero_matrix(4, 4);
      g[0][2] = g[2][0] = constant(1);
      g[1][3] = g[3][1] = constant(1);
      g[2][2] = spec.a;
      g[3][3] = spec.b;
      g[2][3] = g[3][2] = spec.c;
      return finish_metric(spec.chart, std::move(g), Signature{2, 2}, ctx);
    }
    case WalkerKind::General: {
      int n = spec.dimension;
      int r = spec.rank;
      int m = n - 2 * r;
      ExprMatrix g = expr_zero_matrix(n, n);
      auto at = [&g](int i, int j) -> ExprPtr& {
        return g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      };
      for (int i = 0; i < r; ++i) at(i, n - r + i) = at(n - r + i, i) = constant(1);
      for (int al = 0; al < m; ++al)
        for (int be = 0; be < m; ++be)
          at(r + al, r + be) = spec.h_block[static_cast<std::size_t>(al)][static_cast<std::size_t>(be)];
      for (int i = 0; i < r; ++i)
        for (int al = 0; al < m; ++al)
          at(n - r + i, r + al) = at(r + al, n - r + i) =
              spec.a_block[static_cast<std::size_t>(i)][static_cast<std::size_t>(al)];
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          at(n - r + i, n - r + j) = spec.b_block[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      Signature sig{r, r};
      if (m > 0) {
        Signature hs = block_signature(spec.h_block, spec.chart, ctx);
        sig.minus += hs.minus;
        sig.plus += hs.plus;
      }
      return finish_metric(spec.chart, std::move(g), sig, ctx);
    }
  }
  throw ValidationError("unknown Walker kind");
}

MetricTensor build_walker3(const ExprPtr& f, int epsilon, const ZeroContext& ctx) {
  return build_metric(walker3_spec(f, epsilon), ctx);
}

MetricTensor build_walker4(const ExprPtr& a, const ExprPtr& b, const ExprPtr& c,
                           const ZeroContext& ctx) {
  return build_metric(walker4_spec(a, b, c), ctx);
}

MetricTensor build_walker_general(const Chart& chart, int rank, const ExprMatrix& h_block,
                                  const ExprMatrix& a_block, const ExprMatrix& b_block,
                                  const ZeroContext& ctx) {
  return build_metric(walker_general_spec(chart, rank, h_block, a_block, b_block, ctx), ctx);
}

InverseMetric invert(const MetricTensor& g, const ZeroContext& ctx) {
  ExprPtr det = expr_determinant(g.components);
  ZeroResult zr = is_zero(det, ctx);
  if (zr.zero && zr.confidence == Confidence::Exact) {
    throw SingularMetricError("metric determinant is identically zero");
  }
  ExprMatrix inv = expr_inverse(g.components);
  ExprMatrix prod = expr_mat_mul(g.components, inv);
  int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ExprPtr expected = i == j ? constant(1) : constant(0);
      auto res = is_zero(difference(prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                    expected),
                         ctx);
      if (!res.zero) {
        throw SingularMetricError("inverse verification failed at entry (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + ")");
      }
    }
  }
  return InverseMetric{g.chart, std::move(inv)};
}

Verdict is_strict(const WalkerSpec& spec, const ZeroContext& ctx) {
  Verdict v = Verdict::pass();
  ExprMatrix block = spec.quadratic_block();
  for (const auto& row : block) {
    for (const auto& entry : row) {
      for (int i = 0; i < spec.rank; ++i) {
        ExprPtr d = differentiate(entry, spec.chart.name(i));
        v.merge(is_zero(d, ctx));
      }
    }
  }
  return v;
}

}  // namespace walkerlie
