#pragma once

#include "walkerlie/distribution.hpp"
#include "walkerlie/metric.hpp"

namespace walkerlie {

/// Levi-Civita connection coefficients Gamma^k_{ij}, symmetric in (i,j).
struct ConnectionCoefficients {
  Chart chart;
  std::vector<ExprMatrix> gamma;  // gamma[k][i][j]

  const ExprPtr& at(int k, int i, int j) const {
    return gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(j)];
  }
};

/// Curvature tensor R^l_{kij} with the convention
///   R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
///             + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}.
struct RiemannTensor {
  Chart chart;
  std::vector<std::vector<ExprMatrix>> r;  // r[l][k][i][j]

  const ExprPtr& at(int l, int k, int i, int j) const {
    return r[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)]
            [static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

struct RicciTensor {
  Chart chart;
  ExprMatrix components;  // Ric_{ij} = sum_k R^k_{ikj}
};

struct InvariantsReport {
  ExprPtr scal;
  ExprPtr ricci_squared;  // Ric_{ij} Ric^{ij}
  ExprPtr kretschmann;    // R_{mkij} R^{mkij}
};

ConnectionCoefficients christoffel(const MetricTensor& g, const InverseMetric& g_inv);

RiemannTensor riemann(const ConnectionCoefficients& conn);

/// Contraction Ric_{ij} = sum_k R^k_{ikj}; the symmetry residual is
/// verified and an InternalError raised if it fails.
RicciTensor ricci(const RiemannTensor& riem, const ZeroContext& ctx = {});

ExprPtr scalar_curvature(const RicciTensor& ric, const InverseMetric& g_inv);

InvariantsReport curvature_invariants(const MetricTensor& g, const ZeroContext& ctx = {});

/// True when Ric(X, .) = 0 for every spanning field X of d.
Verdict ricci_kernel_check(const MetricTensor& g, const Distribution& d,
                           const ZeroContext& ctx = {});

}  // namespace walkerlie
