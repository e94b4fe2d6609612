// Independent oracles for the test suite, deliberately implemented from
// first principles rather than through the library under test:
//  - unitriangular matrix representations for the Heisenberg algebras and
//    strictly upper-triangular 4x4, with exact rational matrix exp/log
//  - a standalone Chevalley-Eilenberg differential + fraction-free rank
//  - corpus algebra builders
#pragma once

#include <array>
#include <cassert>
#include <utility>
#include <vector>

#include "nilrig/lie_algebra.hpp"
#include "nilrig/rational.hpp"

namespace oracle {

using nilrig::AlgebraData;
using nilrig::BracketTerm;
using nilrig::Integer;
using nilrig::QMatrix;
using nilrig::QVector;
using nilrig::Rational;

// ------------------------------------------------------------ corpus specs

inline AlgebraData abelian(int n) {
  AlgebraData d;
  d.dim = n;
  return d;
}

/// Heisenberg h3: [X2, X3] = X1 (X1 central).
inline AlgebraData h3() {
  AlgebraData d;
  d.dim = 3;
  d.brackets = {{1, 2, 0, Rational(1)}};
  return d;
}

/// Heisenberg h5: [X2, X4] = [X3, X5] = X1.
inline AlgebraData h5() {
  AlgebraData d;
  d.dim = 5;
  d.brackets = {{1, 3, 0, Rational(1)}, {2, 4, 0, Rational(1)}};
  return d;
}

/// Strictly upper-triangular 4x4, ordered central-first:
/// X1=E14, X2=E13, X3=E24, X4=E12, X5=E23, X6=E34.
inline AlgebraData ut4() {
  AlgebraData d;
  d.dim = 6;
  d.brackets = {{3, 4, 1, Rational(1)},   // [X4,X5] = X2
                {4, 5, 2, Rational(1)},   // [X5,X6] = X3
                {2, 3, 0, Rational(-1)},  // [X3,X4] = -X1
                {1, 5, 0, Rational(1)}};  // [X2,X6] = X1
  return d;
}

/// Filiform dim 4 (step 3): [X3,X4] = X2, [X2,X4] = X1.
inline AlgebraData filiform4() {
  AlgebraData d;
  d.dim = 4;
  d.brackets = {{2, 3, 1, Rational(1)}, {1, 3, 0, Rational(1)}};
  return d;
}

// --------------------------------------------- exact unitriangular matrices

/// Dense rational square matrix with plain operations; everything stays
/// exact because the matrices are nilpotent.
struct QMat {
  int n = 0;
  std::vector<Rational> v;  // row-major

  explicit QMat(int n_ = 0) : n(n_), v(static_cast<size_t>(n_) * n_, Rational(0)) {}
  Rational& at(int r, int c) { return v[static_cast<size_t>(r) * n + c]; }
  const Rational& at(int r, int c) const { return v[static_cast<size_t>(r) * n + c]; }

  static QMat eye(int n) {
    QMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
  }
  static QMat unit(int n, int r, int c) {
    QMat m(n);
    m.at(r, c) = Rational(1);
    return m;
  }

  friend QMat operator*(const QMat& a, const QMat& b) {
    QMat out(a.n);
    for (int i = 0; i < a.n; ++i)
      for (int k = 0; k < a.n; ++k) {
        const Rational& aik = a.at(i, k);
        if (aik == Rational(0)) continue;
        for (int j = 0; j < a.n; ++j) out.at(i, j) += aik * b.at(k, j);
      }
    return out;
  }
  friend QMat operator+(QMat a, const QMat& b) {
    for (size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
    return a;
  }
  friend QMat operator-(QMat a, const QMat& b) {
    for (size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
    return a;
  }
  QMat scaled(const Rational& s) const {
    QMat out = *this;
    for (auto& x : out.v) x *= s;
    return out;
  }
  bool operator==(const QMat& o) const { return n == o.n && v == o.v; }
  bool is_zero() const {
    for (const auto& x : v)
      if (!(x == Rational(0))) return false;
    return true;
  }
};

/// exp of a nilpotent matrix: finite sum I + A + A^2/2! + ...
inline QMat mat_exp(const QMat& a) {
  QMat out = QMat::eye(a.n);
  QMat pw = QMat::eye(a.n);
  Rational fact(1);
  for (int m = 1; m <= a.n; ++m) {
    pw = pw * a;
    if (pw.is_zero()) break;
    fact *= Rational(m);
    out = out + pw.scaled(Rational(1) / fact);
  }
  return out;
}

/// log of a unitriangular matrix: finite alternating sum of (M - I)^m / m.
inline QMat mat_log(const QMat& m) {
  QMat u = m - QMat::eye(m.n);
  QMat out(m.n);
  QMat pw = u;
  Rational sign(1);
  for (int k = 1; k <= m.n; ++k) {
    if (pw.is_zero()) break;
    out = out + pw.scaled(sign / Rational(k));
    pw = pw * u;
    sign = -sign;
  }
  return out;
}

/// A matrix representation: one nilpotent matrix per basis vector, in the
/// same order as the algebra basis.
using Rep = std::vector<QMat>;

inline Rep rep_h3() {
  return {QMat::unit(3, 0, 2), QMat::unit(3, 0, 1), QMat::unit(3, 1, 2)};
}

inline Rep rep_h5() {
  // X1=E14, X2=E12, X3=E13, X4=E24, X5=E34: [X2,X4]=[X3,X5]=X1.
  return {QMat::unit(4, 0, 3), QMat::unit(4, 0, 1), QMat::unit(4, 0, 2),
          QMat::unit(4, 1, 3), QMat::unit(4, 2, 3)};
}

inline Rep rep_ut4() {
  // X1=E14, X2=E13, X3=E24, X4=E12, X5=E23, X6=E34.
  return {QMat::unit(4, 0, 3), QMat::unit(4, 0, 2), QMat::unit(4, 1, 3),
          QMat::unit(4, 0, 1), QMat::unit(4, 1, 2), QMat::unit(4, 2, 3)};
}

/// Group element of second-kind coordinates t: exp(t1 X1) ... exp(tn Xn).
inline QMat chart_matrix(const Rep& rep, const QVector& t) {
  QMat g = QMat::eye(rep[0].n);
  for (long i = 0; i < t.size(); ++i)
    g = g * mat_exp(rep[static_cast<size_t>(i)].scaled(t(i)));
  return g;
}

/// Algebra element z in the representation: sum z_i X_i.
inline QMat algebra_matrix(const Rep& rep, const QVector& z) {
  QMat out(rep[0].n);
  for (long i = 0; i < z.size(); ++i) out = out + rep[static_cast<size_t>(i)].scaled(z(i));
  return out;
}

// ------------------------------------- standalone cohomology rank oracle

/// Exact rank by plain Gauss elimination over the rationals.
inline int rational_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty() || m[0].empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!(m[r][c] == Rational(0))) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == Rational(0)) continue;
      Rational f = m[r][c] / m[rank][c];
      for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

/// Bracket [X_i, X_j] straight from the input bracket list (no library).
inline std::vector<Rational> raw_bracket(const AlgebraData& d, int i, int j) {
  std::vector<Rational> out(static_cast<size_t>(d.dim), Rational(0));
  for (const auto& b : d.brackets) {
    if (b.i == i && b.j == j) out[static_cast<size_t>(b.k)] += b.c;
    if (b.i == j && b.j == i) out[static_cast<size_t>(b.k)] -= b.c;
  }
  return out;
}

struct CohomologyDims {
  int h0 = 0, h1 = 0, h2 = 0;
};

/// Betti numbers of the Chevalley-Eilenberg complex in degrees <= 2,
/// built directly from the structure constants:
///   (d1 f)(x,y)   = -f([x,y])
///   (d2 w)(x,y,z) = -w([x,y],z) + w([x,z],y) - w([y,z],x)
inline CohomologyDims ce_dims_bruteforce(const AlgebraData& d) {
  const int n = d.dim;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) triples.push_back({i, j, k});

  // d1: rows = 2-form basis (pairs), cols = 1-form basis.
  std::vector<std::vector<Rational>> d1(pairs.size(),
                                        std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    std::vector<Rational> br = raw_bracket(d, i, j);
    for (int k = 0; k < n; ++k) d1[p][static_cast<size_t>(k)] = -br[static_cast<size_t>(k)];
  }

  // d2: rows = 3-form basis (triples), cols = 2-form basis (pairs).
  auto pair_index = [&](int a, int b, Rational& sign) {
    sign = Rational(1);
    if (a > b) {
      std::swap(a, b);
      sign = Rational(-1);
    }
    for (size_t p = 0; p < pairs.size(); ++p)
      if (pairs[p].first == a && pairs[p].second == b) return static_cast<long>(p);
    return static_cast<long>(-1);
  };
  std::vector<std::vector<Rational>> d2(triples.size(),
                                        std::vector<Rational>(pairs.size(), Rational(0)));
  for (size_t tr = 0; tr < triples.size(); ++tr) {
    auto [i, j, k] = triples[tr];
    struct Piece {
      int a, b, fixed;
      Rational outer;
    };
    const Piece pieces[3] = {{i, j, k, Rational(-1)}, {i, k, j, Rational(1)}, {j, k, i, Rational(-1)}};
    for (const Piece& pc : pieces) {
      std::vector<Rational> br = raw_bracket(d, pc.a, pc.b);
      for (int l = 0; l < n; ++l) {
        if (br[static_cast<size_t>(l)] == Rational(0) || l == pc.fixed) continue;
        Rational sign;
        long p = pair_index(l, pc.fixed, sign);
        assert(p >= 0);
        d2[tr][static_cast<size_t>(p)] += pc.outer * br[static_cast<size_t>(l)] * sign;
      }
    }
  }

  const int r1 = rational_rank(d1);
  const int r2 = rational_rank(d2);
  CohomologyDims out;
  out.h0 = 1;  // trivial coefficients: constants
  out.h1 = n - r1;
  out.h2 = static_cast<int>(pairs.size()) - r2 - r1;
  return out;
}

}  // namespace oracle
