#pragma once

// Numeric curvature oracle: Christoffel symbols and curvature are rebuilt
// from pointwise metric evaluations and central finite differences only,
// independent of the symbolic tensor pipeline.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "walkerlie/metric.hpp"

namespace testutil {

using walkerlie::MetricTensor;
using walkerlie::NumMatrix;
using walkerlie::Point;

inline NumMatrix metric_at(const MetricTensor& g, const Point& p) {
  int n = g.dim();
  NumMatrix m(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          walkerlie::evaluate(g.components[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p);
  return m;
}

inline NumMatrix num_inverse(NumMatrix a) {
  std::size_t n = a.size();
  NumMatrix inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-14) throw std::runtime_error("singular matrix in oracle");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    double p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Gamma^k_{ij} from finite differences of the metric.
inline std::vector<NumMatrix> oracle_christoffel(const MetricTensor& g, const Point& p,
                                                 double h = 1e-5) {
  int n = g.dim();
  auto shifted = [&](int coord, double delta) {
    Point q = p;
    const std::string& name = g.chart.name(coord);
    q.set(name, q.at(name) + delta);
    return q;
  };
  // dg[l][i][j]
  std::vector<NumMatrix> dg(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    NumMatrix hi = metric_at(g, shifted(l, h));
    NumMatrix lo = metric_at(g, shifted(l, -h));
    NumMatrix d(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            (hi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
             lo[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
            (2 * h);
    dg[static_cast<std::size_t>(l)] = std::move(d);
  }
  NumMatrix ginv = num_inverse(metric_at(g, p));
  std::vector<NumMatrix> gamma(static_cast<std::size_t>(n),
                               NumMatrix(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n), 0.0)));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int l = 0; l < n; ++l) {
          acc += ginv[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
                 (dg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] +
                  dg[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] -
                  dg[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            0.5 * acc;
      }
  return gamma;
}

/// R^l_{kij} from finite differences of the oracle Christoffel symbols.
inline double oracle_riemann(const MetricTensor& g, const Point& p, int l, int k, int i, int j,
                             double outer_h = 1e-4) {
  auto shifted = [&](int coord, double delta) {
    Point q = p;
    const std::string& name = g.chart.name(coord);
    q.set(name, q.at(name) + delta);
    return q;
  };
  auto gi = oracle_christoffel(g, shifted(i, outer_h));
  auto gi2 = oracle_christoffel(g, shifted(i, -outer_h));
  auto gj = oracle_christoffel(g, shifted(j, outer_h));
  auto gj2 = oracle_christoffel(g, shifted(j, -outer_h));
  auto g0 = oracle_christoffel(g, p);
  auto L = static_cast<std::size_t>(l);
  auto K = static_cast<std::size_t>(k);
  auto I = static_cast<std::size_t>(i);
  auto J = static_cast<std::size_t>(j);
  double d_i = (gi[L][J][K] - gi2[L][J][K]) / (2 * outer_h);
  double d_j = (gj[L][I][K] - gj2[L][I][K]) / (2 * outer_h);
  double quad = 0;
  int n = g.dim();
  for (int m = 0; m < n; ++m) {
    auto M = static_cast<std::size_t>(m);
    quad += g0[L][I][M] * g0[M][J][K] - g0[L][J][M] * g0[M][I][K];
  }
  return d_i - d_j + quad;
}

}  // namespace testutil
