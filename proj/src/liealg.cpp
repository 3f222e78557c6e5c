#include "walkerlie/liealg.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace walkerlie {

namespace {

// --- univariate rational polynomials (coefficients by ascending degree) ---

using UniPoly = std::vector<Rational>;

void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

UniPoly derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

// Long division; returns remainder, writes quotient if requested.
UniPoly poly_rem(UniPoly num, const UniPoly& den, UniPoly* quot = nullptr) {
  trim(num);
  if (quot) quot->assign(num.size(), Rational(0));
  if (den.empty()) throw std::invalid_argument("polynomial division by zero");
  while (degree(num) >= degree(den) && !num.empty()) {
    int shift = degree(num) - degree(den);
    Rational f = num.back() / den.back();
    if (quot) (*quot)[static_cast<std::size_t>(shift)] = f;
    for (std::size_t k = 0; k < den.size(); ++k) {
      num[static_cast<std::size_t>(shift) + k] -= f * den[k];
    }
    trim(num);
  }
  if (quot) trim(*quot);
  return num;
}

UniPoly monic(UniPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

UniPoly poly_gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = poly_rem(a, b);
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(std::move(a));
}

int sign_of(const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : -1); }

int sign_variations(const std::vector<int>& signs) {
  int count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Scaling by a positive constant keeps sign patterns intact; monic
// normalization would flip them when the leading coefficient is negative.
UniPoly pos_normalize(UniPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational lc = p.back();
  if (lc < 0) lc = -lc;
  for (auto& c : p) c /= lc;
  return p;
}

/// Number of distinct real roots via a Sturm chain over (-inf, inf).
int sturm_real_roots(const UniPoly& p) {
  if (degree(p) <= 0) return 0;
  std::vector<UniPoly> chain{pos_normalize(p), pos_normalize(derivative(p))};
  while (!chain.back().empty() && degree(chain.back()) > 0) {
    UniPoly r = poly_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    trim(r);
    if (r.empty()) break;
    chain.push_back(pos_normalize(std::move(r)));
  }
  std::vector<int> at_plus, at_minus;
  for (const auto& s : chain) {
    if (s.empty()) continue;
    int lc = sign_of(s.back());
    at_plus.push_back(lc);
    at_minus.push_back(degree(s) % 2 == 0 ? lc : -lc);
  }
  return sign_variations(at_minus) - sign_variations(at_plus);
}

/// All roots real (with multiplicity) iff the squarefree part has as many
/// distinct real roots as its degree.
bool all_roots_real(const UniPoly& p) {
  UniPoly q = monic(p);
  if (degree(q) <= 0) return true;
  UniPoly g = poly_gcd(q, derivative(q));
  UniPoly sf;
  if (degree(g) > 0) {
    UniPoly quot;
    poly_rem(q, g, &quot);
    sf = monic(std::move(quot));
  } else {
    sf = q;
  }
  return sturm_real_roots(sf) == degree(sf);
}

/// Monic characteristic polynomial of a rational matrix
/// (Faddeev-LeVerrier recursion).
UniPoly char_poly(const RatMatrix& a) {
  int n = static_cast<int>(a.size());
  UniPoly c(static_cast<std::size_t>(n) + 1, Rational(0));
  c[static_cast<std::size_t>(n)] = 1;
  RatMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      // m = a * (m + c_{n-k+1} I)
      RatMatrix t = m;
      for (int i = 0; i < n; ++i)
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] +=
            c[static_cast<std::size_t>(n - k + 1)];
      RatMatrix prod(static_cast<std::size_t>(n), RatVector(static_cast<std::size_t>(n), Rational(0)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Rational acc(0);
          for (int l = 0; l < n; ++l)
            acc += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                   t[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
          prod[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
      m = std::move(prod);
    }
    Rational tr(0);
    for (int i = 0; i < n; ++i) tr += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    c[static_cast<std::size_t>(n - k)] = -tr / Rational(k);
  }
  return c;
}

// --- span bookkeeping ----------------------------------------------------

std::vector<RatVector> reduce_basis(std::vector<RatVector> vectors) {
  if (vectors.empty()) return {};
  std::size_t cols = vectors[0].size();
  std::vector<RatVector> basis;
  for (auto& v : vectors) {
    RatVector w = v;
    for (const auto& b : basis) {
      // b has leading entry 1 at its pivot column.
      std::size_t pc = 0;
      while (pc < cols && b[pc] == 0) ++pc;
      if (pc < cols && w[pc] != 0) {
        Rational f = w[pc];
        for (std::size_t c = 0; c < cols; ++c) w[c] -= f * b[c];
      }
    }
    std::size_t pc = 0;
    while (pc < cols && w[pc] == 0) ++pc;
    if (pc == cols) continue;
    Rational lead = w[pc];
    for (auto& x : w) x /= lead;
    basis.push_back(std::move(w));
  }
  return basis;
}

std::vector<NumVector> reduce_basis_num(std::vector<NumVector> vectors, double tol) {
  if (vectors.empty()) return {};
  std::size_t cols = vectors[0].size();
  std::vector<NumVector> basis;  // orthonormalized spanning subset
  for (auto& v : vectors) {
    NumVector w = v;
    for (const auto& b : basis) {
      double dot = 0;
      for (std::size_t c = 0; c < cols; ++c) dot += b[c] * w[c];
      for (std::size_t c = 0; c < cols; ++c) w[c] -= dot * b[c];
    }
    double norm = 0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= tol) continue;
    for (double& x : w) x /= norm;
    basis.push_back(std::move(w));
  }
  return basis;
}

std::vector<int> series_dims(const LieAlgebra& l, bool lower_central) {
  int r = l.dim();
  std::vector<int> dims{r};
  if (l.exact()) {
    std::vector<RatVector> full;
    for (int i = 0; i < r; ++i) {
      RatVector e(static_cast<std::size_t>(r), Rational(0));
      e[static_cast<std::size_t>(i)] = 1;
      full.push_back(std::move(e));
    }
    std::vector<RatVector> current = full;
    while (true) {
      const auto& left = lower_central ? full : current;
      std::vector<RatVector> next_vectors;
      for (const auto& x : left)
        for (const auto& y : current) next_vectors.push_back(l.bracket(x, y));
      auto next = reduce_basis(std::move(next_vectors));
      int d = static_cast<int>(next.size());
      dims.push_back(d);
      if (d == 0 || d == dims[dims.size() - 2]) break;
      current = std::move(next);
    }
  } else {
    std::vector<NumVector> full;
    for (int i = 0; i < r; ++i) {
      NumVector e(static_cast<std::size_t>(r), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      full.push_back(std::move(e));
    }
    std::vector<NumVector> current = full;
    while (true) {
      const auto& left = lower_central ? full : current;
      std::vector<NumVector> next_vectors;
      for (const auto& x : left)
        for (const auto& y : current) next_vectors.push_back(l.bracket(x, y));
      auto next = reduce_basis_num(std::move(next_vectors), 1e-9);
      int d = static_cast<int>(next.size());
      dims.push_back(d);
      if (d == 0 || d == dims[dims.size() - 2]) break;
      current = std::move(next);
    }
  }
  return dims;
}

}  // namespace

LieAlgebra LieAlgebra::from_rational(int dim, std::vector<Rational> c,
                                     std::vector<std::string> labels) {
  if (static_cast<int>(c.size()) != dim * dim * dim)
    throw ValidationError("structure constant tensor has wrong size");
  LieAlgebra l;
  l.dim_ = dim;
  l.exact_ = true;
  l.cr_ = std::move(c);
  l.cd_.resize(l.cr_.size());
  for (std::size_t i = 0; i < l.cr_.size(); ++i) l.cd_[i] = to_double(l.cr_[i]);
  l.labels_ = std::move(labels);
  if (l.labels_.empty())
    for (int i = 1; i <= dim; ++i) l.labels_.push_back("e" + std::to_string(i));
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j) {
        if (l.cr_[l.index(k, i, j)] != -l.cr_[l.index(k, j, i)])
          throw ValidationError("structure constants are not antisymmetric");
      }
  return l;
}

LieAlgebra LieAlgebra::from_double(int dim, std::vector<double> c,
                                   std::vector<std::string> labels, double tol) {
  if (static_cast<int>(c.size()) != dim * dim * dim)
    throw ValidationError("structure constant tensor has wrong size");
  LieAlgebra l;
  l.dim_ = dim;
  l.exact_ = false;
  l.cd_ = std::move(c);
  l.cr_.resize(l.cd_.size());
  for (std::size_t i = 0; i < l.cd_.size(); ++i) l.cr_[i] = rational_from_double(l.cd_[i]);
  l.labels_ = std::move(labels);
  if (l.labels_.empty())
    for (int i = 1; i <= dim; ++i) l.labels_.push_back("e" + std::to_string(i));
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j <= i; ++j) {
        if (std::abs(l.cd_[l.index(k, i, j)] + l.cd_[l.index(k, j, i)]) > tol)
          throw ValidationError("structure constants are not antisymmetric");
      }
  return l;
}

LieAlgebra LieAlgebra::abelian(int dim) {
  return from_rational(dim, std::vector<Rational>(static_cast<std::size_t>(dim * dim * dim)));
}

LieAlgebra LieAlgebra::heisenberg() {
  std::vector<Rational> c(27, Rational(0));
  auto idx = [](int k, int i, int j) { return static_cast<std::size_t>((k * 3 + i) * 3 + j); };
  c[idx(2, 0, 1)] = 1;
  c[idx(2, 1, 0)] = -1;
  return from_rational(3, std::move(c));
}

LieAlgebra LieAlgebra::affine_line() {
  std::vector<Rational> c(8, Rational(0));
  auto idx = [](int k, int i, int j) { return static_cast<std::size_t>((k * 2 + i) * 2 + j); };
  c[idx(0, 0, 1)] = 1;
  c[idx(0, 1, 0)] = -1;
  return from_rational(2, std::move(c));
}

RatVector LieAlgebra::bracket(const RatVector& x, const RatVector& y) const {
  RatVector z(static_cast<std::size_t>(dim_), Rational(0));
  for (int k = 0; k < dim_; ++k) {
    Rational acc(0);
    for (int i = 0; i < dim_; ++i) {
      if (x[static_cast<std::size_t>(i)] == 0) continue;
      for (int j = 0; j < dim_; ++j) {
        const Rational& ck = cr_[index(k, i, j)];
        if (ck == 0 || y[static_cast<std::size_t>(j)] == 0) continue;
        acc += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * ck;
      }
    }
    z[static_cast<std::size_t>(k)] = acc;
  }
  return z;
}

NumVector LieAlgebra::bracket(const NumVector& x, const NumVector& y) const {
  NumVector z(static_cast<std::size_t>(dim_), 0.0);
  for (int k = 0; k < dim_; ++k) {
    double acc = 0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        acc += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * cd_[index(k, i, j)];
    z[static_cast<std::size_t>(k)] = acc;
  }
  return z;
}

RatMatrix LieAlgebra::ad(const RatVector& x) const {
  RatMatrix m(static_cast<std::size_t>(dim_), RatVector(static_cast<std::size_t>(dim_), Rational(0)));
  for (int j = 0; j < dim_; ++j) {
    RatVector ej(static_cast<std::size_t>(dim_), Rational(0));
    ej[static_cast<std::size_t>(j)] = 1;
    RatVector col = bracket(x, ej);
    for (int k = 0; k < dim_; ++k)
      m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(k)];
  }
  return m;
}

JacobiResult jacobi_check(const LieAlgebra& l, double tol) {
  int n = l.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          if (l.exact()) {
            Rational acc(0);
            for (int p = 0; p < n; ++p) {
              acc += l.c(p, i, j) * l.c(m, p, k);
              acc += l.c(p, j, k) * l.c(m, p, i);
              acc += l.c(p, k, i) * l.c(m, p, j);
            }
            if (acc != 0) return {false, std::array<int, 4>{i, j, k, m}};
          } else {
            double acc = 0;
            for (int p = 0; p < n; ++p) {
              acc += l.cd(p, i, j) * l.cd(m, p, k);
              acc += l.cd(p, j, k) * l.cd(m, p, i);
              acc += l.cd(p, k, i) * l.cd(m, p, j);
            }
            if (std::abs(acc) > tol) return {false, std::array<int, 4>{i, j, k, m}};
          }
        }
  return {true, std::nullopt};
}

LieAlgebra structure_algebra(const std::vector<VectorField>& frame, const MetricTensor& g,
                             const ZeroContext& ctx, Confidence* how) {
  Verdict par = is_parallel_frame(frame, g, ctx);
  if (!par.value) throw PreconditionError("frame fields are not parallel");
  int r = static_cast<int>(frame.size());
  int n = g.dim();
  Confidence seen = Confidence::Exact;

  ExprMatrix fmat = expr_zero_matrix(n, r);
  for (int c = 0; c < r; ++c)
    for (int row = 0; row < n; ++row)
      fmat[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)] =
          frame[static_cast<std::size_t>(c)].components[static_cast<std::size_t>(row)];

  std::vector<Rational> consts(static_cast<std::size_t>(r * r * r), Rational(0));
  auto idx = [r](int k, int i, int j) { return static_cast<std::size_t>((k * r + i) * r + j); };
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      VectorField br = lie_bracket(frame[static_cast<std::size_t>(i)], frame[static_cast<std::size_t>(j)]);
      auto sol = expr_solve(fmat, br.components, ctx);
      if (!sol) throw ValidationError("frame bracket escapes the span (not involutive)");
      // Verify the solve: residual of F*coef - bracket must vanish.
      for (int row = 0; row < n; ++row) {
        std::vector<ExprPtr> terms{negate(br.components[static_cast<std::size_t>(row)])};
        for (int k = 0; k < r; ++k)
          terms.push_back(product(fmat[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)],
                                  (*sol)[static_cast<std::size_t>(k)]));
        ZeroResult zr = is_zero(sum(std::move(terms)), ctx);
        if (!zr.zero) throw ValidationError("frame bracket escapes the span (not involutive)");
        seen = weaker(seen, zr.confidence);
      }
      for (int k = 0; k < r; ++k) {
        const ExprPtr& coef = (*sol)[static_cast<std::size_t>(k)];
        for (const auto& coord : g.chart.names()) {
          ZeroResult zr = is_zero(differentiate(coef, coord), ctx);
          if (!zr.zero) {
            throw ConstancyError("structure coefficient varies with coordinate '" + coord + "'");
          }
          seen = weaker(seen, zr.confidence);
        }
        Rational value;
        if (auto exact = ratfunc_constant(coef)) {
          value = *exact;
        } else {
          // Constant by the checks above but not foldable exactly.
          Point p;
          for (const auto& name : g.chart.names()) p.set(name, 0.37);
          value = rational_from_double(evaluate(coef, p));
          seen = weaker(seen, Confidence::Probabilistic);
        }
        consts[idx(k, i, j)] = value;
        consts[idx(k, j, i)] = -value;
      }
    }
  }
  if (how) *how = seen;
  return LieAlgebra::from_rational(r, std::move(consts));
}

std::vector<int> derived_series(const LieAlgebra& l) { return series_dims(l, false); }

std::vector<int> lower_central_series(const LieAlgebra& l) { return series_dims(l, true); }

ClassificationLabel classify(const LieAlgebra& l, std::uint64_t seed) {
  ClassificationLabel out;
  int r = l.dim();

  out.abelian = true;
  for (int k = 0; k < r && out.abelian; ++k)
    for (int i = 0; i < r && out.abelian; ++i)
      for (int j = 0; j < r && out.abelian; ++j) {
        if (l.exact() ? l.c(k, i, j) != 0 : std::abs(l.cd(k, i, j)) > 1e-9) out.abelian = false;
      }

  std::vector<int> lcs = lower_central_series(l);
  std::vector<int> der = derived_series(l);
  out.nilpotent = lcs.back() == 0;
  out.solvable = der.back() == 0;
  out.non_solvable = !out.solvable;
  if (out.nilpotent) {
    for (int d : lcs)
      if (d > 0) ++out.nilpotency_step;
  }
  if (out.solvable) {
    for (int d : der)
      if (d > 0) ++out.derived_length;
  }

  if (out.nilpotent) {
    out.completely_solvable = true;
    out.completely_solvable_confidence = Confidence::Exact;
  } else if (out.solvable) {
    // Sampled test: adjoint operators of basis vectors and random rational
    // combinations must have purely real spectra.
    std::vector<RatVector> samples;
    for (int i = 0; i < r; ++i) {
      RatVector e(static_cast<std::size_t>(r), Rational(0));
      e[static_cast<std::size_t>(i)] = 1;
      samples.push_back(std::move(e));
    }
    std::mt19937_64 rng(seed ^ 0xad5ul);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    for (int t = 0; t < 20; ++t) {
      RatVector x(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) x[static_cast<std::size_t>(i)] = Rational(num(rng), den(rng));
      samples.push_back(std::move(x));
    }
    out.completely_solvable = true;
    out.completely_solvable_confidence = Confidence::Sampled;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      UniPoly p = char_poly(l.ad(samples[s]));
      if (!all_roots_real(p)) {
        out.completely_solvable = false;
        out.completely_solvable_confidence = Confidence::Exact;
        std::ostringstream os;
        os << "ad of sample " << s << " has non-real spectrum (characteristic polynomial with "
           << sturm_real_roots(p) << " real roots, degree " << degree(p) << ")";
        out.witness_note = os.str();
        break;
      }
    }
  } else {
    out.completely_solvable = false;
    out.completely_solvable_confidence = Confidence::Exact;
  }

  if (out.abelian) {
    out.model = "AbelianWalker";
  } else if (out.nilpotent) {
    out.model = "NilpotentWalker";
  } else if (out.solvable) {
    out.model = "SolvableWalker";
  } else {
    out.model = "NonSolvable";
  }

  // Flag implications are structural; a violation is an internal bug.
  if (out.abelian && (!out.nilpotent || out.nilpotency_step != 1))
    throw InternalError("abelian algebra must be nilpotent of step 1");
  if (out.nilpotent && (!out.solvable || !out.completely_solvable))
    throw InternalError("nilpotent algebra must be completely solvable");
  return out;
}

LieAlgebra change_basis(const LieAlgebra& l, const RatMatrix& a) {
  if (!l.exact()) throw ValidationError("basis change requires exact structure constants");
  int r = l.dim();
  auto inv = rat_inverse(a);
  if (!inv) throw ValidationError("basis change matrix is singular");
  std::vector<Rational> c(static_cast<std::size_t>(r * r * r), Rational(0));
  auto idx = [r](int k, int i, int j) { return static_cast<std::size_t>((k * r + i) * r + j); };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        Rational acc(0);
        for (int p = 0; p < r; ++p)
          for (int q = 0; q < r; ++q)
            for (int m = 0; m < r; ++m)
              acc += a[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] *
                     a[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)] * l.c(m, p, q) *
                     (*inv)[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
        c[idx(k, i, j)] = acc;
      }
  return LieAlgebra::from_rational(r, std::move(c), l.labels());
}

}  // namespace walkerlie
