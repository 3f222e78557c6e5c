#include "walkerlie/curvature.hpp"

namespace walkerlie {

namespace {

bool struct_zero(const ExprPtr& e) { return is_constant(e, 0); }

}  // namespace

ConnectionCoefficients christoffel(const MetricTensor& g, const InverseMetric& g_inv) {
  int n = g.dim();
  const auto& gm = g.components;
  const auto& gi = g_inv.components;

  // Precompute metric derivatives dg[l][i][j] = d_l g_{ij}.
  std::vector<ExprMatrix> dg(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    dg[static_cast<std::size_t>(l)] = expr_zero_matrix(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        ExprPtr d = differentiate(gm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                  g.chart.name(l));
        dg[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d;
        dg[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = d;
      }
    }
  }

  ConnectionCoefficients out{g.chart, {}};
  out.gamma.assign(static_cast<std::size_t>(n), expr_zero_matrix(n, n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        std::vector<ExprPtr> terms;
        for (int l = 0; l < n; ++l) {
          const ExprPtr& ginv_kl = gi[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
          if (struct_zero(ginv_kl)) continue;
          ExprPtr bracket = simplify(
              sum({dg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)],
                   dg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(l)],
                   negate(dg[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])}));
          if (struct_zero(bracket)) continue;
          terms.push_back(product(ginv_kl, bracket));
        }
        ExprPtr value = simplify(scale(Rational(1, 2), sum(std::move(terms))));
        out.gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = value;
        out.gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = value;
      }
    }
  }
  return out;
}

RiemannTensor riemann(const ConnectionCoefficients& conn) {
  int n = conn.chart.dim();
  RiemannTensor out{conn.chart, {}};
  out.r.assign(static_cast<std::size_t>(n),
               std::vector<ExprMatrix>(static_cast<std::size_t>(n), expr_zero_matrix(n, n)));
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          std::vector<ExprPtr> terms;
          terms.push_back(differentiate(conn.at(l, j, k), conn.chart.name(i)));
          terms.push_back(negate(differentiate(conn.at(l, i, k), conn.chart.name(j))));
          for (int m = 0; m < n; ++m) {
            const ExprPtr& lim = conn.at(l, i, m);
            const ExprPtr& mjk = conn.at(m, j, k);
            if (!struct_zero(lim) && !struct_zero(mjk)) terms.push_back(product(lim, mjk));
            const ExprPtr& ljm = conn.at(l, j, m);
            const ExprPtr& mik = conn.at(m, i, k);
            if (!struct_zero(ljm) && !struct_zero(mik))
              terms.push_back(negate(product(ljm, mik)));
          }
          ExprPtr value = simplify(sum(std::move(terms)));
          out.r[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
               [static_cast<std::size_t>(j)] = value;
          out.r[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]
               [static_cast<std::size_t>(i)] = simplify(negate(value));
        }
      }
    }
  }
  return out;
}

RicciTensor ricci(const RiemannTensor& riem, const ZeroContext& ctx) {
  int n = riem.chart.dim();
  ExprMatrix ric = expr_zero_matrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<ExprPtr> terms;
      for (int k = 0; k < n; ++k) {
        const ExprPtr& e = riem.at(k, i, k, j);
        if (!struct_zero(e)) terms.push_back(e);
      }
      ric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = simplify(sum(std::move(terms)));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      ExprPtr residual = difference(ric[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                    ric[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      if (!is_zero(residual, ctx).zero) {
        throw InternalError("Ricci tensor asymmetry at (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
      }
    }
  }
  return RicciTensor{riem.chart, std::move(ric)};
}

ExprPtr scalar_curvature(const RicciTensor& ric, const InverseMetric& g_inv) {
  int n = ric.chart.dim();
  std::vector<ExprPtr> terms;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ExprPtr& gij = g_inv.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const ExprPtr& rij = ric.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (struct_zero(gij) || struct_zero(rij)) continue;
      terms.push_back(product(gij, rij));
    }
  }
  return simplify(sum(std::move(terms)));
}

InvariantsReport curvature_invariants(const MetricTensor& g, const ZeroContext& ctx) {
  int n = g.dim();
  InverseMetric gi = invert(g, ctx);
  ConnectionCoefficients conn = christoffel(g, gi);
  RiemannTensor riem = riemann(conn);
  RicciTensor ric = ricci(riem, ctx);

  InvariantsReport rep;
  rep.scal = scalar_curvature(ric, gi);

  // Ric^{ij} = g^{ia} g^{jb} Ric_{ab}
  ExprMatrix ric_up = expr_zero_matrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<ExprPtr> terms;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const ExprPtr& gia = gi.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
          const ExprPtr& gjb = gi.components[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
          const ExprPtr& rab = ric.components[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
          if (struct_zero(gia) || struct_zero(gjb) || struct_zero(rab)) continue;
          terms.push_back(product({gia, gjb, rab}));
        }
      }
      ric_up[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = simplify(sum(std::move(terms)));
    }
  }
  {
    std::vector<ExprPtr> terms;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const ExprPtr& low = ric.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const ExprPtr& up = ric_up[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (struct_zero(low) || struct_zero(up)) continue;
        terms.push_back(product(low, up));
      }
    }
    rep.ricci_squared = simplify(sum(std::move(terms)));
  }

  // Fully lowered tensor R_{mkij} = g_{ml} R^l_{kij}, stored sparsely.
  struct LowEntry {
    int m, k, i, j;
    ExprPtr value;
  };
  std::vector<LowEntry> lowered;
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          std::vector<ExprPtr> terms;
          for (int l = 0; l < n; ++l) {
            const ExprPtr& gml = g.components[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)];
            const ExprPtr& rl = riem.at(l, k, i, j);
            if (struct_zero(gml) || struct_zero(rl)) continue;
            terms.push_back(product(gml, rl));
          }
          if (terms.empty()) continue;
          ExprPtr v = simplify(sum(std::move(terms)));
          if (struct_zero(v)) continue;
          lowered.push_back({m, k, i, j, v});
          lowered.push_back({m, k, j, i, simplify(negate(v))});
        }
      }
    }
  }
  {
    // R^{mkij} = g^{ma} g^{kb} g^{ic} g^{jd} R_{abcd}, contracted on the fly.
    std::vector<ExprPtr> terms;
    for (const auto& low : lowered) {
      for (const auto& other : lowered) {
        const ExprPtr& gma = gi.components[static_cast<std::size_t>(low.m)][static_cast<std::size_t>(other.m)];
        if (struct_zero(gma)) continue;
        const ExprPtr& gkb = gi.components[static_cast<std::size_t>(low.k)][static_cast<std::size_t>(other.k)];
        if (struct_zero(gkb)) continue;
        const ExprPtr& gic = gi.components[static_cast<std::size_t>(low.i)][static_cast<std::size_t>(other.i)];
        if (struct_zero(gic)) continue;
        const ExprPtr& gjd = gi.components[static_cast<std::size_t>(low.j)][static_cast<std::size_t>(other.j)];
        if (struct_zero(gjd)) continue;
        terms.push_back(product({low.value, gma, gkb, gic, gjd, other.value}));
      }
    }
    rep.kretschmann = simplify(sum(std::move(terms)));
  }
  return rep;
}

Verdict ricci_kernel_check(const MetricTensor& g, const Distribution& d, const ZeroContext& ctx) {
  if (!(d.chart() == g.chart)) throw ValidationError("distribution chart differs from metric chart");
  InverseMetric gi = invert(g, ctx);
  RicciTensor ric = ricci(riemann(christoffel(g, gi)), ctx);
  int n = g.dim();
  Verdict v = Verdict::pass();
  for (const auto& x : d.fields()) {
    for (int j = 0; j < n; ++j) {
      std::vector<ExprPtr> terms;
      for (int i = 0; i < n; ++i) {
        terms.push_back(product(x.components[static_cast<std::size_t>(i)],
                                ric.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
      }
      v.merge(is_zero(sum(std::move(terms)), ctx));
    }
  }
  return v;
}

}  // namespace walkerlie
