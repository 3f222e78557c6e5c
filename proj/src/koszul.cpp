#include "walkerlie/koszul.hpp"

#include <sstream>

#include "walkerlie/curvature.hpp"

namespace walkerlie {

InvariantMetric InvariantMetric::create(const LieAlgebra& l, RatMatrix gram) {
  int n = l.dim();
  if (static_cast<int>(gram.size()) != n)
    throw ValidationError("metric matrix size differs from algebra dimension");
  for (const auto& row : gram) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("metric matrix is not square");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
          gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
        throw ValidationError("metric matrix is not symmetric");
  if (rat_determinant(gram) == 0) throw SingularMetricError("invariant metric is degenerate");
  return InvariantMetric{std::move(gram)};
}

Rational InvariantMetric::pair(const RatVector& x, const RatVector& y) const {
  Rational acc(0);
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < gram.size(); ++j) {
      if (y[j] == 0 || gram[i][j] == 0) continue;
      acc += x[i] * gram[i][j] * y[j];
    }
  }
  return acc;
}

RatVector InvariantConnection::apply(const RatVector& x, const RatVector& y) const {
  RatVector out(static_cast<std::size_t>(dim), Rational(0));
  for (int i = 0; i < dim; ++i) {
    if (x[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[static_cast<std::size_t>(j)] == 0) continue;
      const RatVector& c = coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < dim; ++k) {
        out[static_cast<std::size_t>(k)] +=
            x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k)];
      }
    }
  }
  return out;
}

InvariantConnection koszul_connection(const LieAlgebra& l, const InvariantMetric& g) {
  if (!l.exact()) throw ValidationError("the Koszul solve requires exact structure constants");
  int n = l.dim();
  auto ginv = rat_inverse(g.gram);
  if (!ginv) throw SingularMetricError("invariant metric is degenerate");

  auto basis = [n](int i) {
    RatVector e(static_cast<std::size_t>(n), Rational(0));
    e[static_cast<std::size_t>(i)] = 1;
    return e;
  };

  InvariantConnection conn;
  conn.dim = n;
  conn.coeff.assign(static_cast<std::size_t>(n),
                    std::vector<RatVector>(static_cast<std::size_t>(n),
                                           RatVector(static_cast<std::size_t>(n), Rational(0))));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // rhs_k = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j)
      RatVector rhs(static_cast<std::size_t>(n), Rational(0));
      RatVector bij = l.bracket(basis(i), basis(j));
      for (int k = 0; k < n; ++k) {
        Rational acc = g.pair(bij, basis(k));
        acc -= g.pair(l.bracket(basis(j), basis(k)), basis(i));
        acc += g.pair(l.bracket(basis(k), basis(i)), basis(j));
        rhs[static_cast<std::size_t>(k)] = acc;
      }
      // 2 sum_m A^m g_{mk} = rhs_k  =>  A = (1/2) g^{-1} rhs.
      RatVector a(static_cast<std::size_t>(n), Rational(0));
      for (int m = 0; m < n; ++m) {
        Rational acc(0);
        for (int k = 0; k < n; ++k)
          acc += (*ginv)[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] *
                 rhs[static_cast<std::size_t>(k)];
        a[static_cast<std::size_t>(m)] = acc / 2;
      }
      conn.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(a);
    }
  }

  // Torsion-freeness: A^k_{ij} - A^k_{ji} = c^k_{ij}.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rational lhs = conn.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                 [static_cast<std::size_t>(k)] -
                       conn.coeff[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>(k)];
        if (lhs != l.c(k, i, j)) throw InternalError("Koszul result is not torsion-free");
      }
  // Metric compatibility: g(A(e_i,e_j),e_k) + g(e_j, A(e_i,e_k)) = 0.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Rational acc =
            g.pair(conn.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], basis(k));
        acc += g.pair(basis(j), conn.coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
        if (acc != 0) throw InternalError("Koszul result is not metric-compatible");
      }
  return conn;
}

bool invariant_is_parallel(const std::vector<RatVector>& subspace,
                           const InvariantConnection& conn) {
  if (subspace.empty()) throw ValidationError("empty subspace");
  RatMatrix span_rows;
  for (const auto& v : subspace) span_rows.push_back(v);
  int base_rank = rat_rank(span_rows);
  if (base_rank != static_cast<int>(subspace.size()))
    throw ValidationError("subspace generators are linearly dependent");
  for (int i = 0; i < conn.dim; ++i) {
    RatVector e(static_cast<std::size_t>(conn.dim), Rational(0));
    e[static_cast<std::size_t>(i)] = 1;
    for (const auto& v : subspace) {
      RatVector w = conn.apply(e, v);
      RatMatrix extended = span_rows;
      extended.push_back(w);
      if (rat_rank(extended) != base_rank) return false;
    }
  }
  return true;
}

InvariantWalkerReport walker_check_invariant(const LieAlgebra& l, const InvariantMetric& g,
                                             const std::vector<RatVector>& subspace,
                                             std::uint64_t seed) {
  InvariantWalkerReport rep;
  rep.isotropic = true;
  for (std::size_t a = 0; a < subspace.size(); ++a)
    for (std::size_t b = a; b < subspace.size(); ++b)
      if (g.pair(subspace[a], subspace[b]) != 0) rep.isotropic = false;

  InvariantConnection conn = koszul_connection(l, g);
  rep.parallel = invariant_is_parallel(subspace, conn);

  RatMatrix span_rows;
  for (const auto& v : subspace) span_rows.push_back(v);
  int base_rank = rat_rank(span_rows);
  rep.bracket_closed = true;
  for (std::size_t a = 0; a < subspace.size(); ++a)
    for (std::size_t b = a + 1; b < subspace.size(); ++b) {
      RatMatrix extended = span_rows;
      extended.push_back(l.bracket(subspace[a], subspace[b]));
      if (rat_rank(extended) != base_rank) rep.bracket_closed = false;
    }

  if (rep.parallel && !rep.bracket_closed) {
    rep.note = "inconsistency: a parallel subspace must be bracket-closed";
    return rep;
  }
  if (rep.isotropic && rep.parallel && rep.bracket_closed) {
    int r = static_cast<int>(subspace.size());
    std::vector<Rational> consts(static_cast<std::size_t>(r * r * r), Rational(0));
    auto idx = [r](int k, int i, int j) { return static_cast<std::size_t>((k * r + i) * r + j); };
    // Transpose of the generator rows: columns are the generators.
    RatMatrix cols(static_cast<std::size_t>(l.dim()), RatVector(static_cast<std::size_t>(r)));
    for (int c = 0; c < r; ++c)
      for (int row = 0; row < l.dim(); ++row)
        cols[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] =
            subspace[static_cast<std::size_t>(c)][static_cast<std::size_t>(row)];
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        RatVector br =
            l.bracket(subspace[static_cast<std::size_t>(i)], subspace[static_cast<std::size_t>(j)]);
        auto sol = rat_solve(cols, br);
        if (!sol) {
          rep.note = "inconsistency: bracket left the subspace during extraction";
          return rep;
        }
        for (int k = 0; k < r; ++k) {
          consts[idx(k, i, j)] = (*sol)[static_cast<std::size_t>(k)];
          consts[idx(k, j, i)] = -(*sol)[static_cast<std::size_t>(k)];
        }
      }
    rep.subalgebra = LieAlgebra::from_rational(r, std::move(consts));
    rep.classification = classify(*rep.subalgebra, seed);
  }
  return rep;
}

}  // namespace walkerlie
