#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace nilrig {

/// Exact linear algebra over an arbitrary field scalar (Rational, or number
/// field elements). Scalars must provide field arithmetic, operator==, and
/// is_zero(). Pivoting is "first nonzero", which is deterministic and valid
/// because arithmetic is exact — no magnitude considerations apply.

template <class S>
using MatrixOf = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VectorOf = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
struct Echelon {
  MatrixOf<S> rref;          ///< reduced row echelon form
  std::vector<int> pivots;   ///< pivot column of each nonzero row, increasing
  int rank = 0;
};

template <class S>
Echelon<S> row_echelon(MatrixOf<S> a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  Echelon<S> e;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != r) a.row(p).swap(a.row(r));
    S inv = S(1) / a(r, c);
    for (int j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      S f = a(i, c);
      for (int j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  e.rref = std::move(a);
  return e;
}

template <class S>
int rank_of(const MatrixOf<S>& a) {
  return row_echelon<S>(a).rank;
}

/// Basis of the right nullspace {x : a·x = 0}, one column per basis vector,
/// in the canonical free-column parameterization of the RREF.
template <class S>
MatrixOf<S> nullspace(const MatrixOf<S>& a) {
  const int cols = static_cast<int>(a.cols());
  Echelon<S> e = row_echelon<S>(a);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  MatrixOf<S> basis(cols, cols - e.rank);
  int out = 0;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    VectorOf<S> v = VectorOf<S>::Constant(cols, S(0));
    v(free) = S(1);
    for (int r = 0; r < e.rank; ++r) v(e.pivots[r]) = -e.rref(r, free);
    basis.col(out++) = v;
    }
  return basis;
}

/// Solves a·x = b exactly; empty optional when inconsistent. When the system
/// is underdetermined, free variables are set to zero (deterministic).
template <class S>
std::optional<VectorOf<S>> solve_linear(const MatrixOf<S>& a, const VectorOf<S>& b) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  MatrixOf<S> aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  Echelon<S> e = row_echelon<S>(aug);
  for (int c : e.pivots)
    if (c == cols) return std::nullopt;  // row [0 ... 0 | 1]: inconsistent
  VectorOf<S> x = VectorOf<S>::Constant(cols, S(0));
  for (int r = 0; r < e.rank; ++r) x(e.pivots[r]) = e.rref(r, cols);
  return x;
}

/// Canonical basis of the row space (nonzero RREF rows).
template <class S>
MatrixOf<S> row_space(const MatrixOf<S>& a) {
  Echelon<S> e = row_echelon<S>(a);
  return e.rref.topRows(e.rank);
}

/// Is v in the span of the rows of `rows_basis`?
template <class S>
bool in_row_span(const MatrixOf<S>& rows_basis, const VectorOf<S>& v) {
  MatrixOf<S> stacked(rows_basis.rows() + 1, rows_basis.cols());
  stacked.topRows(rows_basis.rows()) = rows_basis;
  stacked.row(rows_basis.rows()) = v.transpose();
  return rank_of<S>(stacked) == rank_of<S>(rows_basis);
}

/// Inverse of a lower-triangular matrix with nonzero diagonal (forward
/// substitution per column). Exact; throws nothing — caller checks diagonal.
template <class S>
MatrixOf<S> invert_lower_triangular(const MatrixOf<S>& l) {
  const int n = static_cast<int>(l.rows());
  MatrixOf<S> inv = MatrixOf<S>::Constant(n, n, S(0));
  for (int c = 0; c < n; ++c) {
    inv(c, c) = S(1) / l(c, c);
    for (int i = c + 1; i < n; ++i) {
      S acc(0);
      for (int j = c; j < i; ++j) acc += l(i, j) * inv(j, c);
      inv(i, c) = -acc / l(i, i);
    }
  }
  return inv;
}

}  // namespace nilrig
