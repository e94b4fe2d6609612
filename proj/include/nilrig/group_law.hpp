#pragma once

#include <vector>

#include "nilrig/bch.hpp"
#include "nilrig/lie_algebra.hpp"
#include "nilrig/polynomial.hpp"

namespace nilrig {

/// The compiled polynomial group law in second-kind Malcev coordinates.
/// product[k] is a polynomial in 2n variables (x_1..x_n, y_1..y_n) giving
/// the k-th coordinate of g·h; inverse[k] is a polynomial in n variables.
template <class C>
struct GroupLaw {
  int n = 0;
  std::vector<Polynomial<C>> product;
  std::vector<Polynomial<C>> inverse;
};

/// Compiles the law once, symbolically: coordinates of both factors are left
/// as variables and pushed through log/BCH/coordinate peeling.
GroupLaw<Rational> compile_group_law(const LieAlgebraQ& alg);

/// Memoized per-algebra accessor (first-writer-wins, thread-safe).
const GroupLaw<Rational>& group_law(const LieAlgebraQ& alg);

QVector law_mul(const GroupLaw<Rational>& law, const QVector& x, const QVector& y);
QVector law_inv(const GroupLaw<Rational>& law, const QVector& x);

/// Flattened double-precision polynomial for tight evaluation loops.
struct FlatPoly {
  struct Term {
    double c;
    std::vector<std::pair<int, int>> pows;  // (variable, exponent)
  };
  std::vector<Term> terms;

  double eval(const double* x) const {
    double acc = 0;
    for (const auto& t : terms) {
      double v = t.c;
      for (auto [i, e] : t.pows)
        for (int r = 0; r < e; ++r) v *= x[i];
      acc += v;
    }
    return acc;
  }
};

struct GroupLawNumeric {
  int n = 0;
  std::vector<FlatPoly> product;  // 2n inputs
  std::vector<FlatPoly> inverse;  // n inputs

  void mul(const double* x, const double* y, double* out) const {
    // Stack scratch: dimensions in this artifact are tiny (n <= 16).
    double in[32];
    for (int i = 0; i < n; ++i) in[i] = x[i];
    for (int i = 0; i < n; ++i) in[n + i] = y[i];
    for (int k = 0; k < n; ++k) out[k] = product[k].eval(in);
  }
  void inv(const double* x, double* out) const {
    for (int k = 0; k < n; ++k) out[k] = inverse[k].eval(x);
  }
};

GroupLawNumeric compile_numeric(const GroupLaw<Rational>& law);

/// Exact reduction g = γ·g₀ in the chart of a strongly based lattice:
/// walks coordinates from index n down to 1, left-multiplying by e^{-m_i X_i}
/// (top coordinates are unaffected by lower peels under a strong Malcev
/// order). gamma_powers holds (m_1..m_n) with γ = e^{m_n X_n}···e^{m_1 X_1}.
struct ChartReductionQ {
  std::vector<Integer> gamma_powers;
  QVector gamma;  // second-kind coordinates of γ (integer entries)
  QVector g0;     // in [0,1)^n
};
ChartReductionQ reduce_in_chart(const GroupLaw<Rational>& law, const QVector& t);

/// Float variant; writes g₀ into g0 and the peel exponents into powers.
void reduce_in_chart_fast(const GroupLawNumeric& law, const double* t, double* g0, long* powers);

/// Second-kind coordinates of γ = e^{m_n X_n}···e^{m_1 X_1}.
Eigen::VectorXd gamma_coords(const GroupLawNumeric& law, const long* powers);

}  // namespace nilrig
