#pragma once

#include <optional>

#include "walkerlie/liealg.hpp"

namespace walkerlie {

/// Left-invariant metric on a Lie algebra, given by its Gram matrix in the
/// algebra basis. Exact rational arithmetic throughout.
struct InvariantMetric {
  RatMatrix gram;

  static InvariantMetric create(const LieAlgebra& l, RatMatrix gram);
  Rational pair(const RatVector& x, const RatVector& y) const;
  int dim() const { return static_cast<int>(gram.size()); }
};

/// Connection coefficients nabla_{e_i} e_j = sum_k coeff[i][j][k] e_k.
struct InvariantConnection {
  int dim = 0;
  std::vector<std::vector<RatVector>> coeff;

  RatVector apply(const RatVector& x, const RatVector& y) const;
};

/// Levi-Civita connection of a left-invariant metric from the Koszul
/// formula 2 g(nabla_U V, W) = g([U,V],W) - g([V,W],U) + g([W,U],V),
/// solved exactly. Torsion-freeness and metric compatibility are verified
/// on every result.
InvariantConnection koszul_connection(const LieAlgebra& l, const InvariantMetric& g);

/// True when nabla_{e_i} v stays inside the span of the subspace
/// generators for every basis direction i (exact rank test).
bool invariant_is_parallel(const std::vector<RatVector>& subspace, const InvariantConnection& conn);

struct InvariantWalkerReport {
  bool isotropic = false;
  bool parallel = false;
  bool bracket_closed = false;
  std::optional<LieAlgebra> subalgebra;  // set when isotropic, parallel and closed
  std::optional<ClassificationLabel> classification;
  std::string note;
};

/// Full check of a candidate null parallel subspace of a left-invariant
/// metric: isotropy, parallelism, bracket closure and the classification
/// of the resulting structure subalgebra.
InvariantWalkerReport walker_check_invariant(const LieAlgebra& l, const InvariantMetric& g,
                                             const std::vector<RatVector>& subspace,
                                             std::uint64_t seed = 42);

}  // namespace walkerlie
