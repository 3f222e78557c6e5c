#pragma once

#include <vector>

#include "walkerlie/metric.hpp"

namespace walkerlie {

struct VectorField {
  Chart chart;
  ExprVector components;  // one per coordinate

  VectorField(Chart c, ExprVector comps);
};

/// Coordinate field d/dx_i.
VectorField coordinate_field(const Chart& chart, int index);

/// Lie bracket [X, Y] of two fields on the same chart.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Constant-rank distribution given by a spanning set of fields. The
/// constructor samples random points and rejects spanning sets whose
/// pointwise rank differs from the declared rank, reporting a witness.
class Distribution {
 public:
  static Distribution create(Chart chart, std::vector<VectorField> fields, int rank,
                             bool walker_candidate = false, const ZeroContext& ctx = {});

  const Chart& chart() const { return chart_; }
  const std::vector<VectorField>& fields() const { return fields_; }
  int rank() const { return rank_; }

 private:
  Distribution(Chart chart, std::vector<VectorField> fields, int rank)
      : chart_(std::move(chart)), fields_(std::move(fields)), rank_(rank) {}
  Chart chart_;
  std::vector<VectorField> fields_;
  int rank_;
};

/// Membership of V in the span of the given fields. Constant-coefficient
/// spans are decided exactly via the complementary linear conditions;
/// otherwise pointwise least-squares residuals at 16 sampled points decide
/// (the sample includes points with single coordinates clamped to zero so
/// escapes on degenerate loci are caught).
Verdict span_membership(const std::vector<VectorField>& span, const VectorField& v,
                        const ZeroContext& ctx = {});

Verdict is_totally_isotropic(const Distribution& d, const MetricTensor& g,
                             const ZeroContext& ctx = {});

Verdict is_involutive(const Distribution& d, const ZeroContext& ctx = {});

Verdict is_parallel(const Distribution& d, const MetricTensor& g, const ZeroContext& ctx = {});

/// True when every field in the list is itself parallel (covariant
/// derivative zero in every coordinate direction).
Verdict is_parallel_frame(const std::vector<VectorField>& fields, const MetricTensor& g,
                          const ZeroContext& ctx = {});

/// Solution space of g(V, X) = 0 for all spanning fields X of d.
Distribution orthogonal_complement(const Distribution& d, const MetricTensor& g,
                                   const ZeroContext& ctx = {});

/// Connection induced on TM/D written in the chosen complement frame:
/// coefficients[i][b][c] is the c-component of the class of
/// nabla_{d/dx_i} Y_b.
struct TransverseConnection {
  std::vector<VectorField> complement;
  std::vector<std::vector<ExprVector>> coefficients;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TransverseConnection transverse_connection(const MetricTensor& g, const Distribution& d,
                                           const std::vector<VectorField>& complement,
                                           const ZeroContext& ctx = {});

}  // namespace walkerlie
