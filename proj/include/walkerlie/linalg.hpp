#pragma once

#include <optional>
#include <vector>

#include "walkerlie/expr.hpp"
#include "walkerlie/zerotest.hpp"

namespace walkerlie {

using ExprMatrix = std::vector<std::vector<ExprPtr>>;
using ExprVector = std::vector<ExprPtr>;
using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

// --- symbolic matrices --------------------------------------------------

ExprMatrix expr_identity(int n);
ExprMatrix expr_zero_matrix(int rows, int cols);
ExprMatrix expr_mat_mul(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix simplify_matrix(const ExprMatrix& m);

/// Determinant by cofactor expansion along the structurally sparsest row.
ExprPtr expr_determinant(const ExprMatrix& m);

/// Inverse via adjugate over determinant, entries simplified.
/// Precondition: determinant not identically zero.
ExprMatrix expr_inverse(const ExprMatrix& m);

/// Solves a*x = rhs by Gaussian elimination over the expression field.
/// Pivot decisions use exact/probabilistic zero tests. Returns nullopt if
/// the system is singular or inconsistent under those tests.
std::optional<ExprVector> expr_solve(const ExprMatrix& a, const ExprVector& rhs,
                                     const ZeroContext& ctx = {});

/// Basis of the nullspace of a (rows are conditions), entries simplified.
std::vector<ExprVector> expr_nullspace(const ExprMatrix& a, const ZeroContext& ctx = {});

// --- exact rational matrices --------------------------------------------

int rat_rank(RatMatrix m);
Rational rat_determinant(RatMatrix m);
std::optional<RatMatrix> rat_inverse(const RatMatrix& m);
std::optional<RatVector> rat_solve(const RatMatrix& a, const RatVector& rhs);
std::vector<RatVector> rat_nullspace(const RatMatrix& a);

// --- numeric matrices ----------------------------------------------------

using NumMatrix = std::vector<std::vector<double>>;
using NumVector = std::vector<double>;

int num_rank(NumMatrix m, double tol = 1e-9);

/// Distance from rhs to the column span of a (Euclidean norm of the
/// orthogonal residual), computed by modified Gram-Schmidt.
double num_span_residual(const NumMatrix& a, const NumVector& rhs, double tol = 1e-12);

}  // namespace walkerlie
