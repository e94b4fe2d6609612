#pragma once

#include <vector>

#include "nilrig/lie_algebra.hpp"

namespace nilrig {

/// Chevalley–Eilenberg complex of 𝔫 with trivial real coefficients,
/// restricted to the degrees the rigidity argument uses (p <= 2 everywhere;
/// the generic Koszul differential is implemented for any p <= n).

/// Increasing multi-indices enumerating the basis of Λ^p 𝔫*.
std::vector<std::vector<int>> exterior_basis(int n, int p);

/// Matrix of d: Λ^p 𝔫* → Λ^{p+1} 𝔫* in those bases. Degree-1 case:
/// (dφ)(X_i, X_j) = -φ([X_i, X_j]).
QMatrix ce_differential(const LieAlgebraQ& alg, int p);

struct CohomologyReport {
  int h0 = 0, h1 = 0, h2 = 0;
  /// Rows = rational functionals spanning H¹(𝔫) = annihilator of [𝔫,𝔫],
  /// in the dual basis X_1*..X_n*.
  QMatrix h1_basis;
  int derived_dim = 0;
  /// dim Hom(Λ,ℝ) = n − rank of the commutator relation lattice; equals
  /// dim H¹(𝔫) (asserted).
  int hom_dim = 0;
};

/// Report for the algebra alone (Hom dimension from the derived algebra).
CohomologyReport cohomology_report(const LieAlgebraQ& alg);

/// Report with the lattice's commutator relation words: each row is the
/// normal-form exponent vector of a commutator [λ_i, λ_j] in the lattice
/// generators. The Hom dimension is computed from their rank and the equality
/// with dim H¹ is asserted (Error on mismatch — indicates a broken lattice).
CohomologyReport cohomology_report(const LieAlgebraQ& alg,
                                   const std::vector<std::vector<Integer>>& commutator_normal_forms);

}  // namespace nilrig
