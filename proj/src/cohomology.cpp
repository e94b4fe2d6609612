#include "nilrig/cohomology.hpp"

#include <algorithm>
#include <map>

namespace nilrig {

std::vector<std::vector<int>> exterior_basis(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  std::vector<int> idx(p);
  for (int i = 0; i < p; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    if (p == 0) break;
    int pos = p - 1;
    while (pos >= 0 && idx[pos] == n - p + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int q = pos + 1; q < p; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

namespace {

/// Sorts (k, rest...) into increasing order; returns the permutation sign,
/// or 0 if k collides with an element of rest.
int insert_sorted(int k, std::vector<int> rest, std::vector<int>& out) {
  int sign = 1;
  out.clear();
  bool placed = false;
  for (int r : rest) {
    if (r == k) return 0;
    if (!placed && k < r) {
      out.push_back(k);
      placed = true;
    }
    if (!placed) sign = -sign;
    out.push_back(r);
  }
  if (!placed) out.push_back(k);
  return sign;
}

}  // namespace

QMatrix ce_differential(const LieAlgebraQ& alg, int p) {
  const int n = alg.dim();
  if (p < 0 || p > n)
    throw Error(ErrorCode::DegreeOutOfRange, "ce_differential",
                "degree p = " + std::to_string(p) + " outside 0..dim");
  auto dom = exterior_basis(n, p);
  auto cod = exterior_basis(n, p + 1);
  std::map<std::vector<int>, int> cod_index;
  for (size_t r = 0; r < cod.size(); ++r) cod_index[cod[r]] = static_cast<int>(r);

  QMatrix d = QMatrix::Constant(static_cast<int>(cod.size()), static_cast<int>(dom.size()),
                                Rational(0));
  // (dω)(X_{s_0},…,X_{s_p}) = Σ_{a<b} (−1)^{a+b} ω([X_{s_a},X_{s_b}], …ŝ_a…ŝ_b…).
  // Column c of d expresses d(dual basis element ω_I); we evaluate it on each
  // codomain multi-index S and collect coefficients.
  for (size_t row = 0; row < cod.size(); ++row) {
    const auto& s = cod[row];
    for (size_t a = 0; a < s.size(); ++a) {
      for (size_t b = a + 1; b < s.size(); ++b) {
        int sign_ab = ((a + b) % 2 == 0) ? 1 : -1;
        std::vector<int> rest;
        for (size_t q = 0; q < s.size(); ++q)
          if (q != a && q != b) rest.push_back(s[q]);
        int lo = std::min(s[a], s[b]), hi = std::max(s[a], s[b]);
        int flip = (s[a] < s[b]) ? 1 : -1;  // bracket antisymmetry (always lo<hi here)
        for (const auto& [k, c] : alg.bracket_entries(lo, hi)) {
          std::vector<int> arg;
          int sign_ins = insert_sorted(k, rest, arg);
          if (sign_ins == 0) continue;
          auto it = cod_index.end();
          // arg has p entries -> it's a domain index.
          // Find its position among domain multi-indices.
          // (dom is lexicographically sorted by construction.)
          auto pos = std::lower_bound(dom.begin(), dom.end(), arg);
          if (pos == dom.end() || *pos != arg) continue;
          int col = static_cast<int>(pos - dom.begin());
          d(static_cast<int>(row), col) += Rational(sign_ab * flip * sign_ins) * c;
          (void)it;
        }
      }
    }
  }
  return d;
}

namespace {

CohomologyReport base_report(const LieAlgebraQ& alg) {
  const int n = alg.dim();
  CohomologyReport rep;
  QMatrix d0 = ce_differential(alg, 0);
  QMatrix d1 = ce_differential(alg, 1);
  QMatrix d2 = ce_differential(alg, 2);

  // d∘d = 0 is a structural guarantee; recompute as a cheap self-check.
  QMatrix dd = d2 * d1;
  for (int r = 0; r < dd.rows(); ++r)
    for (int c = 0; c < dd.cols(); ++c)
      if (!dd(r, c).is_zero())
        throw Error(ErrorCode::JacobiViolation, "cohomology_report", "d∘d != 0");

  int rank_d0 = rank_of<Rational>(d0);  // always 0 for trivial coefficients
  int rank_d1 = rank_of<Rational>(d1);
  int rank_d2 = rank_of<Rational>(d2);
  rep.h0 = 1 - rank_d0;
  rep.h1 = n - rank_d1;
  rep.h2 = static_cast<int>(d2.cols()) - rank_d2 - rank_d1;

  // H¹ as the annihilator of the derived algebra.
  QMatrix derived = derived_subalgebra(alg);
  rep.derived_dim = static_cast<int>(derived.rows());
  QMatrix ann = nullspace<Rational>(derived);  // columns
  rep.h1_basis = ann.transpose();
  if (rep.h1 != n - rep.derived_dim)
    throw Error(ErrorCode::JacobiViolation, "cohomology_report",
                "rank(d¹) disagrees with dim[𝔫,𝔫]");
  return rep;
}

}  // namespace

CohomologyReport cohomology_report(const LieAlgebraQ& alg) {
  CohomologyReport rep = base_report(alg);
  rep.hom_dim = alg.dim() - rep.derived_dim;
  return rep;
}

CohomologyReport cohomology_report(const LieAlgebraQ& alg,
                                   const std::vector<std::vector<Integer>>& words) {
  CohomologyReport rep = base_report(alg);
  const int n = alg.dim();
  QMatrix m = QMatrix::Constant(static_cast<int>(words.size()), n, Rational(0));
  for (size_t r = 0; r < words.size(); ++r)
    for (int c = 0; c < n; ++c) m(static_cast<int>(r), c) = Rational(words[r][c]);
  int rank = rank_of<Rational>(m);
  rep.hom_dim = n - rank;
  if (rep.hom_dim != rep.h1)
    throw Error(ErrorCode::NotStronglyBased, "cohomology_report",
                "dim Hom(Λ,ℝ) = " + std::to_string(rep.hom_dim) +
                    " but dim H¹(𝔫) = " + std::to_string(rep.h1));
  return rep;
}

}  // namespace nilrig
