#pragma once

#include <variant>

#include "walkerlie/koszul.hpp"

namespace walkerlie {

/// Algebra-valued coframe: omega = sum_i omega^i (x) e_i with components
/// omega^i_j over the chart (i indexes the algebra, j the coordinates).
struct MaurerCartanForm {
  Chart chart;
  LieAlgebra algebra;
  std::vector<ExprVector> omega;  // omega[i][j]

  int rank() const { return algebra.dim(); }
};

/// Coframe dual to the given frame along the distribution it spans,
/// annihilating the chosen complement. The joint frame must span the
/// tangent space pointwise; surjectivity of the result is sampled.
MaurerCartanForm build_mc_form(const std::vector<VectorField>& frame,
                               const std::vector<VectorField>& complement, const LieAlgebra& l,
                               const ZeroContext& ctx = {});

/// Componentwise structure equation: for every algebra slot k and
/// coordinate pair i < j,
///   d_i omega^k_j - d_j omega^k_i + sum_{a,b} c^k_{ab} omega^a_i omega^b_j = 0.
Verdict mc_check(const MaurerCartanForm& form, const ZeroContext& ctx = {});

/// Matrix generators M_1..M_r with [M_a, M_b] = sum_k c^k_{ab} M_k,
/// verified exactly at construction.
struct GroupRepresentation {
  int size = 0;
  std::vector<RatMatrix> generators;

  static GroupRepresentation create(const LieAlgebra& l, int size, std::vector<RatMatrix> gens);
  /// Translations of R^r as (r+1)x(r+1) matrices.
  static GroupRepresentation abelian(int r);
  /// Unitriangular 3x3 generators for [e1,e2] = e3.
  static GroupRepresentation heisenberg(const LieAlgebra& l);
  /// Upper-triangular 2x2 generators for [e1,e2] = e1.
  static GroupRepresentation affine(const LieAlgebra& l);
};

struct PolylineCurve {
  std::vector<Point> vertices;
};

struct ParametricCurve {
  std::string parameter;
  ExprVector components;  // one per chart coordinate, expressions in the parameter
  double t_begin = 0;
  double t_end = 1;
};

struct Curve {
  Chart chart;
  std::variant<PolylineCurve, ParametricCurve> shape;

  Point start() const;
  Point end() const;
};

Curve polyline_curve(const Chart& chart, std::vector<Point> vertices);
Curve parametric_curve(const Chart& chart, const std::string& parameter, ExprVector components,
                       double t_begin, double t_end);

struct DevelopResult {
  NumMatrix element;                          // group element in the representation
  std::optional<NumVector> abelian_log;       // line integrals for abelian targets
  std::optional<std::vector<Rational>> abelian_exact;  // exact when polynomial + polyline
  long steps = 0;
};

/// Develops the curve through the matrix initial value problem
/// M'(t) = M(t) (sum_i omega^i(gamma'(t)) M_i), M(0) = Id, integrated with
/// the classical fixed-step fourth-order scheme. With this orientation a
/// coframe satisfying the structure equation develops path-independently
/// on simply connected domains, and concatenation composes as
/// develop(a then b) = develop(a) * develop(b). Abelian targets also get
/// the componentwise line integrals, exactly when the pullback is
/// polynomial over a polyline.
DevelopResult develop(const MaurerCartanForm& form, const Curve& curve,
                      const GroupRepresentation& rep, double step_fraction = 1e-3);

/// Develops both curves (which must share endpoints) and compares the
/// resulting group elements in the max norm.
Verdict path_independence_check(const MaurerCartanForm& form, const Curve& a, const Curve& b,
                                const GroupRepresentation& rep, double tol = 1e-6,
                                double step_fraction = 1e-3);

/// Structure constants depending smoothly on one parameter.
struct DeformationFamily {
  int dim = 0;
  std::string parameter = "t";
  std::vector<ExprPtr> c;  // index (k*dim + i)*dim + j; antisymmetry enforced

  static DeformationFamily create(int dim, std::string parameter, std::vector<ExprPtr> c,
                                  const ZeroContext& ctx = {});
  const ExprPtr& at(int k, int i, int j) const {
    return c[static_cast<std::size_t>((k * dim + i) * dim + j)];
  }
};

struct DeformationEntry {
  Rational t;
  bool jacobi_ok = false;
  std::optional<ClassificationLabel> label;
};

struct DeformationReport {
  std::vector<DeformationEntry> entries;
  std::vector<std::size_t> transitions;  // indices where the model label changes
};

DeformationReport deformation_scan(const DeformationFamily& family,
                                   const std::vector<Rational>& grid, std::uint64_t seed = 42);

}  // namespace walkerlie
