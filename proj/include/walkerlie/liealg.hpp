#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "walkerlie/distribution.hpp"

namespace walkerlie {

/// Finite-dimensional Lie algebra given by structure constants c^k_{ij}
/// with [e_i, e_j] = sum_k c^k_{ij} e_k. Constants are exact rationals
/// when the source is exact; numeric algebras carry doubles and take the
/// tolerance-based rank path in the series computations.
class LieAlgebra {
 public:
  static LieAlgebra from_rational(int dim, std::vector<Rational> c,
                                  std::vector<std::string> labels = {});
  static LieAlgebra from_double(int dim, std::vector<double> c,
                                std::vector<std::string> labels = {}, double tol = 1e-9);
  static LieAlgebra abelian(int dim);
  static LieAlgebra heisenberg();      // [e1,e2] = e3
  static LieAlgebra affine_line();     // [e1,e2] = e1

  int dim() const { return dim_; }
  bool exact() const { return exact_; }
  const Rational& c(int k, int i, int j) const { return cr_[index(k, i, j)]; }
  double cd(int k, int i, int j) const { return cd_[index(k, i, j)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Bracket of coefficient vectors in the algebra basis.
  RatVector bracket(const RatVector& x, const RatVector& y) const;
  NumVector bracket(const NumVector& x, const NumVector& y) const;

  /// Matrix of ad_x, columns indexed by basis vectors.
  RatMatrix ad(const RatVector& x) const;

 private:
  LieAlgebra() = default;
  std::size_t index(int k, int i, int j) const {
    return static_cast<std::size_t>((k * dim_ + i) * dim_ + j);
  }
  int dim_ = 0;
  bool exact_ = true;
  std::vector<Rational> cr_;
  std::vector<double> cd_;
  std::vector<std::string> labels_;
};

struct JacobiResult {
  bool ok = true;
  std::optional<std::array<int, 4>> witness;  // (i, j, k, l) of the failing sum
};

JacobiResult jacobi_check(const LieAlgebra& l, double tol = 1e-9);

struct ConstancyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Extracts the structure algebra of a parallel frame: brackets of the
/// frame fields are solved for in the frame and the coefficients must be
/// constant. Throws PreconditionError when the frame is not parallel,
/// ValidationError when a bracket escapes the span, ConstancyError when a
/// coefficient depends on a coordinate (the message names it).
/// `how` receives Exact when every coefficient folded to a rational
/// exactly, Probabilistic when constancy was decided by sampling.
LieAlgebra structure_algebra(const std::vector<VectorField>& frame, const MetricTensor& g,
                             const ZeroContext& ctx = {}, Confidence* how = nullptr);

/// Dimensions of the derived series g, [g,g], ... until stabilization.
std::vector<int> derived_series(const LieAlgebra& l);

/// Dimensions of the lower central series g, [g,g], [g,[g,g]], ...
std::vector<int> lower_central_series(const LieAlgebra& l);

struct ClassificationLabel {
  bool abelian = false;
  bool nilpotent = false;
  int nilpotency_step = 0;  // number of nonzero terms of the lower central series
  bool solvable = false;
  int derived_length = 0;
  bool completely_solvable = false;
  Confidence completely_solvable_confidence = Confidence::Exact;
  bool non_solvable = false;
  std::string model;  // AbelianWalker | NilpotentWalker | SolvableWalker | NonSolvable
  std::string witness_note;  // set when an adjoint operator has complex spectrum
};

/// Classifies by series plus a sampled real-spectrum test on adjoint
/// operators (basis vectors and random rational combinations; failures are
/// exact Sturm counts, passes are tagged SAMPLED).
ClassificationLabel classify(const LieAlgebra& l, std::uint64_t seed = 42);

/// Structure constants conjugated by an invertible basis change; used by
/// the invariance tests. Requires an exact algebra.
LieAlgebra change_basis(const LieAlgebra& l, const RatMatrix& a);

}  // namespace walkerlie
