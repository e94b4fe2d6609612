#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nilrig/diophantine.hpp"
#include "nilrig/group_law.hpp"
#include "nilrig/lie_algebra.hpp"
#include "nilrig/linalg.hpp"
#include "nilrig/number_field.hpp"

namespace nilrig {

struct LatticeOptions {
  int word_len = 4;       ///< closure certified on generator words up to this length
  int rescale_bound = 64; ///< largest integer K tried by the rescale search
};

/// A lattice presented in its own chart: generators e^{Z_1},...,e^{Z_n} whose
/// integer-coordinate words form the lattice. `chart` is the ambient algebra
/// written in the Z basis (rescaled from the input basis when the closure
/// check required it).
struct LatticeSpec {
  LieAlgebraQ chart;
  QMatrix generators;          ///< rows = second-kind coordinates of the generators
  int rescale_factor = 1;      ///< K of the applied rescaling X_i -> K^(1-l_i) X_i (1 = none)
  std::vector<int> rescale_levels;  ///< lower-central-series level l_i per basis index
  long closure_words_checked = 0;
  int closure_word_len = 0;
};

/// Certifies that integer words in the generators close up (all generator
/// words up to opts.word_len reduce to integer coordinates — a desk-scale
/// certificate, not a proof). On failure searches K = 2..rescale_bound over
/// the central-series rescaling family for a basis in which closure holds.
/// Throws ClosureFailure (with the witness word) when a rescale exists but
/// generators are not the unit ones, and RescaleBoundExceeded when no K works.
LatticeSpec verify_lattice(const LieAlgebraQ& alg, const QMatrix& generators,
                           const LatticeOptions& opts = {});

/// A certified pair: the integer lattice Γ in the X-chart and the Diophantine
/// lattice Λ generated by Y_i = α^(deg i) X_i. The Y-chart structure constants
/// coincide with the X-chart ones (grading), so Γ's chart algebra serves both.
struct LatticePair {
  LieAlgebraQ algebra;                        ///< the common chart algebra
  LatticeSpec gamma;                          ///< integer lattice
  std::vector<int> degrees;                   ///< grading degree per basis index
  std::shared_ptr<const NumberField> field;   ///< ℚ(α)
  MatrixOf<QAlpha> a;                         ///< lower-triangular: Y_i = Σ_j a_ij X_j
  std::vector<DiophantineCertificate> diagonal_certs;  ///< per index, for a_ii
};

/// Validates the grading ([V_i,V_j] ⊆ V_{i+j} exactly; GradingViolation
/// otherwise), requires deg(min_poly) >= top degree + 1 (DegreeMismatch) and
/// irreducibility (ReduciblePolynomial via the number-field layer), then
/// builds Λ with exact ℚ(α) coordinates and a Liouville certificate for every
/// diagonal entry α^(deg i).
LatticePair build_diophantine_pair(const LieAlgebraQ& alg, const std::vector<int>& degrees,
                                   const UPoly& min_poly, const QInterval& isolating,
                                   const CertOptions& cert_opts = {},
                                   const LatticeOptions& lattice_opts = {});

/// Checks that φ(X) = α^(deg X)·X is a Lie algebra automorphism:
/// [φX_i, φX_j] = φ[X_i, X_j] exactly in ℚ(α) for all basis pairs. Returns
/// the first failing (i, j) pair (0-based) or std::nullopt on success.
std::optional<std::pair<int, int>> verify_graded_automorphism(const LieAlgebraQ& alg,
                                                              const std::vector<int>& degrees,
                                                              const QAlpha& alpha);

/// Solves Y = A·X for the change-of-basis table between two generator-log
/// matrices (rows = logarithms of the generators in a common basis) and
/// verifies A is lower-triangular; throws NotTriangular with the witness
/// entry otherwise.
MatrixOf<QAlpha> triangular_relation_check(const MatrixOf<QAlpha>& log_gamma,
                                           const MatrixOf<QAlpha>& log_lambda);
MatrixOf<QAlpha> triangular_relation_check(const LatticePair& pair);

/// The pair induced on the quotient by the central direction X_1: drop the
/// first coordinate of everything (algebra, grading, a-table, certificates).
LatticePair quotient_pair(const LatticePair& pair);

/// Reduction of a chart point modulo the integer lattice: g = γ·g0 with
/// γ = e^{m_n X_n}···e^{m_1 X_1} and g0 in [0,1)^n. Verifies that γ has
/// integer chart coordinates (NotStronglyBased otherwise — the lattice's
/// generator words do not close up at this point).
ChartReductionQ reduce_mod_lattice(const LieAlgebraQ& alg, const QVector& t);

/// One commutator relation of the lattice: the normal form
/// λ_i λ_j λ_i^{-1} λ_j^{-1} = e^{m_1 Z_1}···e^{m_n Z_n} with integer m.
struct RelationWord {
  int i = 0, j = 0;            ///< 0-based generator indices, i < j
  std::vector<Integer> m;      ///< normal-form exponents
};

/// All pairwise commutator relation words of a strongly based lattice,
/// computed exactly in its own chart. Exponent vectors are integral by the
/// closure certificate; NotStronglyBased if one is not.
std::vector<RelationWord> relation_words(const LatticeSpec& lattice);

}  // namespace nilrig
