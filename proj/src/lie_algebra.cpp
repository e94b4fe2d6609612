#include "nilrig/lie_algebra.hpp"

#include <map>
#include <sstream>

namespace nilrig {

namespace {

std::string default_name(int i) { return "X" + std::to_string(i + 1); }

/// Rows spanning [span(rows_a), span(rows_b)] under the bracket of alg.
QMatrix bracket_span(const LieAlgebraQ& alg, const QMatrix& a, const QMatrix& b) {
  const int n = alg.dim();
  std::vector<QVector> images;
  for (int r = 0; r < a.rows(); ++r)
    for (int s = 0; s < b.rows(); ++s) {
      QVector v = alg.bracket(a.row(r).transpose(), b.row(s).transpose());
      bool zero = true;
      for (int k = 0; k < n; ++k)
        if (!v(k).is_zero()) { zero = false; break; }
      if (!zero) images.push_back(std::move(v));
    }
  QMatrix m(static_cast<int>(images.size()), n);
  for (size_t r = 0; r < images.size(); ++r) m.row(static_cast<int>(r)) = images[r].transpose();
  return row_space<Rational>(m);
}

}  // namespace

LieAlgebraQ validate_algebra(const AlgebraData& data) {
  const int n = data.dim;
  if (n < 1)
    throw Error(ErrorCode::ParseError, "validate_algebra", "dimension must be >= 1");
  std::vector<std::string> names = data.names;
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back(default_name(i));
  if (static_cast<int>(names.size()) != n)
    throw Error(ErrorCode::ParseError, "validate_algebra", "basis name count != dim");

  // Merge duplicate (i,j,k) entries; enforce index discipline.
  std::map<std::tuple<int, int, int>, Rational> merged;
  for (const auto& b : data.brackets) {
    if (b.i < 0 || b.j < 0 || b.k < 0 || b.i >= n || b.j >= n || b.k >= n)
      throw Error(ErrorCode::ParseError, "validate_algebra", "bracket index out of range");
    if (b.i >= b.j)
      throw Error(ErrorCode::ParseError, "validate_algebra",
                  "bracket keys must have i < j (antisymmetry is implied)");
    merged[{b.i, b.j, b.k}] += b.c;
  }

  // Strong Malcev order: [X_i, X_j] (i<j) must lie in span{X_1..X_i}.
  for (const auto& [key, c] : merged) {
    auto [i, j, k] = key;
    if (c.is_zero()) continue;
    if (k > i) {
      std::ostringstream msg;
      msg << "span{X1..X" << (i + 1) << "} is not an ideal: [X" << (i + 1) << ",X" << (j + 1)
          << "] has a X" << (k + 1) << " component (" << c << ")";
      throw Error(ErrorCode::NotStrongMalcevOrder, "validate_algebra", msg.str());
    }
  }

  // Tentative algebra (step patched after the series is known).
  LieAlgebraQ alg(n, names, /*step=*/1);
  for (const auto& [key, c] : merged) {
    auto [i, j, k] = key;
    if (!c.is_zero()) alg.set_bracket_entry(i, j, k, c);
  }

  // Jacobi: [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] = 0 for all i<j<k.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        QVector ei = QVector::Constant(n, Rational(0));
        QVector ej = ei, ek = ei;
        ei(i) = Rational(1);
        ej(j) = Rational(1);
        ek(k) = Rational(1);
        QVector defect = alg.bracket(alg.bracket(ei, ej), ek) +
                         alg.bracket(alg.bracket(ej, ek), ei) +
                         alg.bracket(alg.bracket(ek, ei), ej);
        for (int l = 0; l < n; ++l)
          if (!defect(l).is_zero()) {
            std::ostringstream msg;
            msg << "Jacobi defect at triple (X" << (i + 1) << ",X" << (j + 1) << ",X" << (k + 1)
                << "): component X" << (l + 1) << " = " << defect(l);
            throw Error(ErrorCode::JacobiViolation, "validate_algebra", msg.str());
          }
      }

  // Nilpotency via the lower central series (and record the step).
  QMatrix cur = QMatrix::Identity(n, n);
  int step = 0;
  while (cur.rows() > 0) {
    ++step;
    if (step > n + 1)
      throw Error(ErrorCode::NotNilpotent, "validate_algebra",
                  "lower central series failed to terminate");
    QMatrix next = bracket_span(alg, QMatrix::Identity(n, n), cur);
    if (next.rows() == cur.rows())
      throw Error(ErrorCode::NotNilpotent, "validate_algebra",
                  "lower central series stabilized at dimension " +
                      std::to_string(cur.rows()));
    cur = std::move(next);
  }

  LieAlgebraQ out(n, names, step);
  for (const auto& [key, c] : merged) {
    auto [i, j, k] = key;
    if (!c.is_zero()) out.set_bracket_entry(i, j, k, c);
  }
  return out;
}

LowerCentralSeries lower_central_series(const LieAlgebraQ& alg) {
  const int n = alg.dim();
  LowerCentralSeries s;
  QMatrix full = QMatrix::Identity(n, n);
  QMatrix cur = full;
  while (cur.rows() > 0) {
    s.subspaces.push_back(cur);
    cur = bracket_span(alg, full, cur);
  }
  s.step = static_cast<int>(s.subspaces.size());

  // Complement V_l: RREF rows of 𝔫^l whose pivot column is not a pivot of 𝔫^{l+1}.
  for (int l = 0; l < s.step; ++l) {
    Echelon<Rational> here = row_echelon<Rational>(s.subspaces[l]);
    std::vector<int> next_pivots;
    if (l + 1 < s.step) next_pivots = row_echelon<Rational>(s.subspaces[l + 1]).pivots;
    std::vector<int> keep;
    for (int r = 0; r < here.rank; ++r) {
      bool shared = false;
      for (int p : next_pivots)
        if (p == here.pivots[r]) { shared = true; break; }
      if (!shared) keep.push_back(r);
    }
    QMatrix v(static_cast<int>(keep.size()), n);
    for (size_t r = 0; r < keep.size(); ++r) v.row(static_cast<int>(r)) = here.rref.row(keep[r]);
    s.complements.push_back(std::move(v));
  }

  s.level.assign(n, 1);
  for (int i = 0; i < n; ++i) {
    QVector ei = QVector::Constant(n, Rational(0));
    ei(i) = Rational(1);
    for (int l = 0; l < s.step; ++l)
      if (in_row_span<Rational>(s.subspaces[l], ei)) s.level[i] = l + 1;
  }
  return s;
}

bool x1_is_central(const LieAlgebraQ& alg) {
  for (int j = 0; j < alg.dim(); ++j)
    if (!alg.bracket_entries(0, j).empty()) return false;
  return true;
}

LieAlgebraQ quotient_algebra(const LieAlgebraQ& alg) {
  const int n = alg.dim();
  if (!x1_is_central(alg)) {
    for (int j = 0; j < n; ++j)
      if (!alg.bracket_entries(0, j).empty())
        throw Error(ErrorCode::NotCentral, "quotient_algebra",
                    "[X1, X" + std::to_string(j + 1) + "] != 0");
  }
  AlgebraData data;
  data.dim = n - 1;
  for (int i = 1; i < n; ++i) data.names.push_back(alg.names()[i]);
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (const auto& [k, c] : alg.bracket_entries(i, j))
        if (k >= 1) data.brackets.push_back({i - 1, j - 1, k - 1, c});
  // Re-validation is cheap and re-derives the quotient step.
  return validate_algebra(data);
}

QMatrix derived_subalgebra(const LieAlgebraQ& alg) {
  const int n = alg.dim();
  QMatrix full = QMatrix::Identity(n, n);
  return bracket_span(alg, full, full);
}

int derived_dimension(const LieAlgebraQ& alg) {
  return static_cast<int>(derived_subalgebra(alg).rows());
}

}  // namespace nilrig
