#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nilrig/errors.hpp"
#include "nilrig/linalg.hpp"
#include "nilrig/rational.hpp"
#include "nilrig/scalar.hpp"

namespace nilrig {

template <class C>
struct GroupLaw;

/// Raw, unvalidated structure-constant input: [X_i, X_j] = Σ_k c·X_k for
/// 0-based i < j. Everything else about the algebra is derived.
struct BracketTerm {
  int i, j, k;
  Rational c;
};

struct AlgebraData {
  int dim = 0;
  std::vector<std::string> names;  // optional; defaults to X1..Xn
  std::vector<BracketTerm> brackets;
};

namespace detail {
struct LawCache {
  std::once_flag once;
  std::shared_ptr<const GroupLaw<Rational>> law;
};
}  // namespace detail

/// A nilpotent Lie algebra with a strong Malcev ordered basis, over scalar S.
/// Instances with S = Rational are produced by validate_algebra (which proves
/// the invariants); other scalars arise via map_scalar / change_basis from a
/// validated source.
template <class S>
class LieAlgebra {
 public:
  using Entry = std::pair<int, S>;  // (k, coefficient)

  LieAlgebra() = default;
  LieAlgebra(int n, std::vector<std::string> names, int step)
      : n_(n), step_(step), names_(std::move(names)),
        adj_(n, std::vector<std::vector<Entry>>(n)),
        cache_(std::make_shared<detail::LawCache>()) {}

  int dim() const { return n_; }
  int step() const { return step_; }
  const std::vector<std::string>& names() const { return names_; }

  /// Sets [X_i, X_j] (i < j) and the antisymmetric mirror.
  void set_bracket_entry(int i, int j, int k, const S& c) {
    adj_[i][j].push_back({k, c});
    adj_[j][i].push_back({k, -c});
  }

  const std::vector<Entry>& bracket_entries(int i, int j) const { return adj_[i][j]; }

  bool is_abelian() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (!adj_[i][j].empty()) return false;
    return true;
  }

  /// [X_j, v] for a coordinate vector v.
  VectorOf<S> ad_basis(int j, const VectorOf<S>& v) const {
    VectorOf<S> out = VectorOf<S>::Constant(n_, S(0));
    for (int l = 0; l < n_; ++l) {
      if (scalar_is_zero(v(l))) continue;
      for (const auto& [k, c] : adj_[j][l]) out(k) += v(l) * c;
    }
    return out;
  }

  VectorOf<S> bracket(const VectorOf<S>& x, const VectorOf<S>& y) const {
    VectorOf<S> out = VectorOf<S>::Constant(n_, S(0));
    for (int i = 0; i < n_; ++i) {
      if (scalar_is_zero(x(i))) continue;
      for (int j = 0; j < n_; ++j) {
        if (scalar_is_zero(y(j))) continue;
        for (const auto& [k, c] : adj_[i][j]) out(k) += x(i) * y(j) * c;
      }
    }
    return out;
  }

  template <class T, class Fn>
  LieAlgebra<T> map_scalar(Fn fn) const {
    LieAlgebra<T> out(n_, names_, step_);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        for (const auto& [k, c] : adj_[i][j]) out.set_bracket_entry(i, j, k, fn(c));
    return out;
  }

  detail::LawCache& law_cache() const { return *cache_; }

 private:
  int n_ = 0;
  int step_ = 1;
  std::vector<std::string> names_;
  std::vector<std::vector<std::vector<Entry>>> adj_;  // adj_[i][j] = entries of [X_i, X_j]
  std::shared_ptr<detail::LawCache> cache_;
};

using LieAlgebraQ = LieAlgebra<Rational>;

struct LowerCentralSeries {
  /// subspaces[l] = canonical (RREF rows) basis of 𝔫^{l+1}; subspaces[0] is
  /// the identity (𝔫¹ = 𝔫) and the list stops at the last nonzero term 𝔫^s.
  std::vector<QMatrix> subspaces;
  /// complements[l]: rows spanning V_{l+1} with 𝔫^{l+1} = V_{l+1} ⊕ 𝔫^{l+2}.
  std::vector<QMatrix> complements;
  int step = 1;
  /// level[i] = the deepest l (1-based) with X_i ∈ 𝔫^l.
  std::vector<int> level;
};

/// Validates Jacobi, strong-Malcev ordering, and nilpotency; throws Error on
/// failure. The returned algebra knows its step.
LieAlgebraQ validate_algebra(const AlgebraData& data);

LowerCentralSeries lower_central_series(const LieAlgebraQ& alg);

bool x1_is_central(const LieAlgebraQ& alg);

/// 𝔫̄ = 𝔫 / ℝX₁ on the images of X₂..X_n. Requires X₁ central.
LieAlgebraQ quotient_algebra(const LieAlgebraQ& alg);

/// Structure constants in the basis Z_i = Σ_j A(i,j)·X_j (rows of A express
/// the new basis; A invertible). Scalar-generic so number-field bases work.
template <class S>
LieAlgebra<S> change_basis(const LieAlgebra<S>& alg, const MatrixOf<S>& a);

/// Dimension of the derived algebra [𝔫, 𝔫] (exact rank of bracket images).
int derived_dimension(const LieAlgebraQ& alg);

/// Canonical rows spanning the derived algebra.
QMatrix derived_subalgebra(const LieAlgebraQ& alg);

// ---- implementation of templated pieces ----

template <class S>
LieAlgebra<S> change_basis(const LieAlgebra<S>& alg, const MatrixOf<S>& a) {
  const int n = alg.dim();
  // Z-coordinates w of a vector v solve aᵀ·w = v.
  MatrixOf<S> at = a.transpose();
  LieAlgebra<S> out(n, alg.names(), alg.step());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      VectorOf<S> zi = a.row(i).transpose();
      VectorOf<S> zj = a.row(j).transpose();
      VectorOf<S> br = alg.bracket(zi, zj);
      auto w = solve_linear<S>(at, br);
      if (!w) throw Error(ErrorCode::NotTriangular, "change_basis", "basis matrix is singular");
      for (int k = 0; k < n; ++k)
        if (!(*w)(k).is_zero()) out.set_bracket_entry(i, j, k, (*w)(k));
    }
  }
  return out;
}

}  // namespace nilrig
