#pragma once

#include <stdexcept>

#include "walkerlie/chart.hpp"
#include "walkerlie/linalg.hpp"
#include "walkerlie/verdict.hpp"

namespace walkerlie {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMetricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inertia counts (negative, positive) of a non-degenerate symmetric form.
struct Signature {
  int minus = 0;
  int plus = 0;
};

/// Symmetric metric tensor on a chart. The symmetric-product convention is
/// one half on each off-diagonal slot, so "2 dx1 o dx3" contributes matrix
/// entries g13 = g31 = 1 and "eps dx2^2" contributes g22 = eps.
struct MetricTensor {
  Chart chart;
  ExprMatrix components;
  Signature signature;

  int dim() const { return chart.dim(); }
};

struct InverseMetric {
  Chart chart;
  ExprMatrix components;
};

enum class WalkerKind { Dim3, Dim4, General };

/// Canonical-form data for the three Walker builders. The first `rank`
/// chart coordinates span the null parallel distribution; the quadratic
/// block sits on the dual coordinates (the last `rank`), the transverse
/// block on the middle ones.
struct WalkerSpec {
  WalkerKind kind;
  int dimension = 0;
  int rank = 0;
  int epsilon = 1;  // three-dimensional form only
  Chart chart;
  ExprPtr f;        // dim3 quadratic-block entry
  ExprPtr a, b, c;  // dim4 quadratic-block entries
  ExprMatrix h_block, a_block, b_block;  // general form

  /// Entries of the quadratic block whose x-independence decides strictness.
  ExprMatrix quadratic_block() const;
};

WalkerSpec walker3_spec(const ExprPtr& f, int epsilon);
WalkerSpec walker4_spec(const ExprPtr& a, const ExprPtr& b, const ExprPtr& c);
WalkerSpec walker_general_spec(const Chart& chart, int rank, const ExprMatrix& h_block,
                               const ExprMatrix& a_block, const ExprMatrix& b_block,
                               const ZeroContext& ctx = {});

MetricTensor build_metric(const WalkerSpec& spec, const ZeroContext& ctx = {});

/// g = 2 dx1 o dx3 + eps dx2^2 + f dx3^2 on the chart (x1,x2,x3).
MetricTensor build_walker3(const ExprPtr& f, int epsilon, const ZeroContext& ctx = {});

/// g = 2(dx1 o dx3 + dx2 o dx4) + a dx3^2 + b dx4^2 + 2c dx3 o dx4.
MetricTensor build_walker4(const ExprPtr& a, const ExprPtr& b, const ExprPtr& c,
                           const ZeroContext& ctx = {});

/// General canonical form of a rank-r Walker metric; block matrices are
/// metric entries: pairing identity between x^i and its dual, h on the
/// transverse coordinates, a between duals and transverse, b on the duals.
MetricTensor build_walker_general(const Chart& chart, int rank, const ExprMatrix& h_block,
                                  const ExprMatrix& a_block, const ExprMatrix& b_block,
                                  const ZeroContext& ctx = {});

/// Symbolic inverse via adjugate over determinant. Verifies g * g^-1 = I;
/// throws SingularMetricError when the determinant vanishes identically.
InverseMetric invert(const MetricTensor& g, const ZeroContext& ctx = {});

/// True when every quadratic-block entry is independent of the first
/// `rank` coordinates.
Verdict is_strict(const WalkerSpec& spec, const ZeroContext& ctx = {});

}  // namespace walkerlie
