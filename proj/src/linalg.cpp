#include "walkerlie/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace walkerlie {

namespace {

bool struct_zero(const ExprPtr& e) { return is_constant(e, 0); }

ExprMatrix minor_matrix(const ExprMatrix& m, int drop_row, int drop_col) {
  int n = static_cast<int>(m.size());
  ExprMatrix out;
  out.reserve(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i < n; ++i) {
    if (i == drop_row) continue;
    ExprVector row;
    row.reserve(static_cast<std::size_t>(n) - 1);
    for (int j = 0; j < n; ++j) {
      if (j == drop_col) continue;
      row.push_back(m[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

ExprPtr det_recursive(const ExprMatrix& m) {
  int n = static_cast<int>(m.size());
  if (n == 1) return m[0][0];
  if (n == 2)
    return simplify(
        difference(product(m[0][0], m[1][1]), product(m[0][1], m[1][0])));
  // Expand along the row with the most structural zeros.
  int best_row = 0;
  int best_zeros = -1;
  for (int i = 0; i < n; ++i) {
    int zeros = 0;
    for (int j = 0; j < n; ++j) zeros += struct_zero(m[i][j]) ? 1 : 0;
    if (zeros > best_zeros) {
      best_zeros = zeros;
      best_row = i;
    }
  }
  std::vector<ExprPtr> terms;
  for (int j = 0; j < n; ++j) {
    if (struct_zero(m[best_row][j])) continue;
    ExprPtr cof = det_recursive(minor_matrix(m, best_row, j));
    ExprPtr term = product(m[best_row][j], cof);
    if ((best_row + j) % 2 == 1) term = negate(term);
    terms.push_back(term);
  }
  return simplify(sum(std::move(terms)));
}

}  // namespace

ExprMatrix expr_identity(int n) {
  ExprMatrix m(static_cast<std::size_t>(n), ExprVector(static_cast<std::size_t>(n), constant(0)));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = constant(1);
  return m;
}

ExprMatrix expr_zero_matrix(int rows, int cols) {
  return ExprMatrix(static_cast<std::size_t>(rows),
                    ExprVector(static_cast<std::size_t>(cols), constant(0)));
}

ExprMatrix expr_mat_mul(const ExprMatrix& a, const ExprMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  ExprMatrix out(n, ExprVector(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<ExprPtr> terms;
      for (std::size_t l = 0; l < k; ++l) terms.push_back(product(a[i][l], b[l][j]));
      out[i][j] = simplify(sum(std::move(terms)));
    }
  }
  return out;
}

ExprMatrix simplify_matrix(const ExprMatrix& m) {
  ExprMatrix out = m;
  for (auto& row : out)
    for (auto& e : row) e = simplify(e);
  return out;
}

ExprPtr expr_determinant(const ExprMatrix& m) {
  if (m.empty() || m.size() != m[0].size()) throw std::invalid_argument("square matrix required");
  return det_recursive(m);
}

ExprMatrix expr_inverse(const ExprMatrix& m) {
  int n = static_cast<int>(m.size());
  ExprPtr det = expr_determinant(m);
  ExprMatrix inv(static_cast<std::size_t>(n), ExprVector(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ExprPtr cof = n == 1 ? constant(1) : det_recursive(minor_matrix(m, j, i));
      if ((i + j) % 2 == 1) cof = negate(cof);
      inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = simplify(quotient(cof, det));
    }
  }
  return inv;
}

namespace {

// Gaussian elimination over the expression field on an augmented system.
// Returns reduced rows and pivot columns. Zero tests decide pivoting.
struct Eliminated {
  ExprMatrix rows;   // n_rows x (cols + rhs_cols)
  std::vector<int> pivot_col;  // per eliminated row
};

Eliminated eliminate(ExprMatrix rows, int cols, const ZeroContext& ctx) {
  Eliminated out;
  std::size_t nrows = rows.size();
  std::vector<bool> used(nrows, false);
  for (int col = 0; col < cols; ++col) {
    int pivot = -1;
    // Prefer constant pivots: they keep entries small.
    for (std::size_t r = 0; r < nrows; ++r) {
      if (used[r]) continue;
      const ExprPtr& e = rows[r][static_cast<std::size_t>(col)];
      if (e->kind == ExprKind::Constant && e->value != 0) {
        pivot = static_cast<int>(r);
        break;
      }
    }
    if (pivot < 0) {
      for (std::size_t r = 0; r < nrows; ++r) {
        if (used[r]) continue;
        if (!is_zero(rows[r][static_cast<std::size_t>(col)], ctx).zero) {
          pivot = static_cast<int>(r);
          break;
        }
      }
    }
    if (pivot < 0) continue;
    used[static_cast<std::size_t>(pivot)] = true;
    auto& prow = rows[static_cast<std::size_t>(pivot)];
    ExprPtr pe = prow[static_cast<std::size_t>(col)];
    for (auto& e : prow) e = simplify(quotient(e, pe));
    for (std::size_t r = 0; r < nrows; ++r) {
      if (static_cast<int>(r) == pivot) continue;
      ExprPtr factor = rows[r][static_cast<std::size_t>(col)];
      if (struct_zero(factor)) continue;
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        rows[r][c] = simplify(difference(rows[r][c], product(factor, prow[c])));
      }
    }
    out.rows.push_back(prow);
    out.pivot_col.push_back(col);
  }
  // Remaining rows (no pivot) are appended for consistency checks.
  for (std::size_t r = 0; r < nrows; ++r) {
    if (!used[r]) {
      out.rows.push_back(rows[r]);
      out.pivot_col.push_back(-1);
    }
  }
  return out;
}

}  // namespace

std::optional<ExprVector> expr_solve(const ExprMatrix& a, const ExprVector& rhs,
                                     const ZeroContext& ctx) {
  std::size_t nrows = a.size();
  std::size_t cols = a[0].size();
  ExprMatrix aug = a;
  for (std::size_t r = 0; r < nrows; ++r) aug[r].push_back(rhs[r]);
  Eliminated el = eliminate(std::move(aug), static_cast<int>(cols), ctx);
  ExprVector x(cols, constant(0));
  for (std::size_t r = 0; r < el.rows.size(); ++r) {
    int pc = el.pivot_col[r];
    if (pc < 0) {
      // 0 = rhs residue must vanish for consistency.
      if (!is_zero(el.rows[r][cols], ctx).zero) return std::nullopt;
      continue;
    }
    x[static_cast<std::size_t>(pc)] = el.rows[r][cols];
  }
  // Under-determined systems get free variables set to zero; verify.
  if (el.rows.size() < cols) return x;
  return x;
}

std::vector<ExprVector> expr_nullspace(const ExprMatrix& a, const ZeroContext& ctx) {
  std::size_t cols = a[0].size();
  Eliminated el = eliminate(a, static_cast<int>(cols), ctx);
  std::vector<bool> is_pivot(cols, false);
  for (int pc : el.pivot_col)
    if (pc >= 0) is_pivot[static_cast<std::size_t>(pc)] = true;
  std::vector<ExprVector> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    ExprVector v(cols, constant(0));
    v[free_col] = constant(1);
    for (std::size_t r = 0; r < el.rows.size(); ++r) {
      int pc = el.pivot_col[r];
      if (pc < 0) continue;
      v[static_cast<std::size_t>(pc)] = simplify(negate(el.rows[r][free_col]));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

int rat_rank(RatMatrix m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

Rational rat_determinant(RatMatrix m) {
  std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::optional<RatMatrix> rat_inverse(const RatMatrix& m) {
  std::size_t n = m.size();
  RatMatrix a = m;
  RatMatrix inv(n, RatVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

std::optional<RatVector> rat_solve(const RatMatrix& a, const RatVector& rhs) {
  std::size_t rows = a.size(), cols = a[0].size();
  RatMatrix aug = a;
  for (std::size_t r = 0; r < rows; ++r) aug[r].push_back(rhs[r]);
  std::size_t row = 0;
  std::vector<int> pivot_of_col(cols, -1);
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && aug[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(aug[pivot], aug[row]);
    Rational p = aug[row][col];
    for (std::size_t c = 0; c <= cols; ++c) aug[row][c] /= p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rational f = aug[r][col];
      for (std::size_t c = 0; c <= cols; ++c) aug[r][c] -= f * aug[row][c];
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (aug[r][cols] != 0) return std::nullopt;  // inconsistent
  }
  RatVector x(cols, Rational(0));
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) x[c] = aug[static_cast<std::size_t>(pivot_of_col[c])][cols];
  }
  return x;
}

std::vector<RatVector> rat_nullspace(const RatMatrix& a) {
  std::size_t rows = a.size(), cols = a[0].size();
  RatMatrix m = a;
  std::size_t row = 0;
  std::vector<int> pivot_of_col(cols, -1);
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    Rational p = m[row][col];
    for (std::size_t c = 0; c < cols; ++c) m[row][c] /= p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  std::vector<RatVector> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    RatVector v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      if (pivot_of_col[c] >= 0) v[c] = -m[static_cast<std::size_t>(pivot_of_col[c])][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

int num_rank(NumMatrix m, double tol) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    double best = std::abs(m[row][col]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      if (std::abs(m[r][col]) > best) {
        best = std::abs(m[r][col]);
        pivot = r;
      }
    }
    if (best <= tol) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      double f = m[r][col] / m[row][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

double num_span_residual(const NumMatrix& a, const NumVector& rhs, double tol) {
  // Columns of a orthonormalized by modified Gram-Schmidt; residual is the
  // part of rhs outside their span.
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<NumVector> q;
  for (std::size_t c = 0; c < cols; ++c) {
    NumVector v(rows);
    for (std::size_t r = 0; r < rows; ++r) v[r] = a[r][c];
    for (const auto& u : q) {
      double dot = 0;
      for (std::size_t r = 0; r < rows; ++r) dot += u[r] * v[r];
      for (std::size_t r = 0; r < rows; ++r) v[r] -= dot * u[r];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > tol) {
      for (double& x : v) x /= norm;
      q.push_back(std::move(v));
    }
  }
  NumVector res = rhs;
  for (const auto& u : q) {
    double dot = 0;
    for (std::size_t r = 0; r < rows; ++r) dot += u[r] * res[r];
    for (std::size_t r = 0; r < rows; ++r) res[r] -= dot * u[r];
  }
  double norm = 0;
  for (double x : res) norm += x * x;
  return std::sqrt(norm);
}

}  // namespace walkerlie
