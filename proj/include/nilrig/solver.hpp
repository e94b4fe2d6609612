#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "nilrig/grid.hpp"
#include "nilrig/lattice.hpp"
#include "nilrig/lie_algebra.hpp"

namespace nilrig {

/// Interpolation used when a grid function is evaluated at translated points.
/// Spectral: trigonometric in every coordinate (exact for band-limited data
/// that extends periodically in chart coordinates). Cubic: trigonometric in
/// the fiber coordinate, periodic Catmull-Rom in the base coordinates (local
/// stencils; robust for fiber-rich data whose chart extension is twisted).
enum class InterpKind { Spectral, Cubic };

enum class Side { Right, Left };

struct SolveOptions {
  long K = 32;                ///< fiber mode cutoff (clamped to fiber_len/2 per level)
  double tol = 1e-6;
  double divisor_floor = 0.0; ///< 0 = derive C·K^(-α)/2 from the level certificate
  double fiber_tol = 0.0;     ///< fiber-mean / fiber-constancy threshold; 0 = tol
  InterpKind interp = InterpKind::Spectral;
  int threads = 1;
};

/// Real-valued cocycle over the right action of the Diophantine lattice:
/// grids[j] holds c(·, exp(Y_{j+1})) sampled on the chart grid.
struct Cocycle {
  GridShape shape;
  std::vector<FunctionGrid> grids;

  Cocycle() = default;
  Cocycle(GridShape s, int gens) : shape(std::move(s)) {
    grids.assign(static_cast<std::size_t>(gens), FunctionGrid(shape));
  }
  Cocycle& operator+=(const Cocycle& o);
};

struct AveragedCocycle {
  std::vector<double> c0;  ///< invariant-measure average per generator
  Cocycle centered;        ///< c − c0
};

/// Output of the per-fiber rotation solves for the central generator.
struct FiberTransfer {
  FunctionGrid h;           ///< transfer on the full grid, fiber-mean zero per line
  FunctionGrid line_means;  ///< per-base-point fiber means of the input
  double divisor_min = 2.0;
  double divisor_floor = 0.0;
  double tail_mass = 0.0;  ///< worst line
  double decay_m = std::numeric_limits<double>::infinity();  ///< worst fitted decay
  double base_jump = 0.0;  ///< max adjacent-base difference of h (continuity sanity)
  long K_eff = 0;
};

struct LevelReport {
  int level = 0;  ///< 1-based; level l retires the generator exp(Y_l)
  long fiber_len = 0;
  long K_eff = 0;
  double a = 0.0;  ///< fiber rotation number of the level
  double divisor_min = 2.0;
  double divisor_floor = 0.0;
  double tail_mass = 0.0;
  double decay_m = std::numeric_limits<double>::infinity();
  double fiber_residual = 0.0;  ///< sup deviation from fiber means after correction
  double base_jump = 0.0;
  double c0_central = 0.0;  ///< constant extracted for the retired generator
  /// The level's fiber transfer on the level's own chart (top level: full
  /// grid; deeper levels: the successively descended quotient grids).
  std::optional<FunctionGrid> h;
};

struct ReductionResult {
  std::vector<double> c0;  ///< homomorphism value per generator
  FunctionGrid transfer;   ///< P, normalized to grid mean zero
  double residual = 0.0;   ///< sup_j sup_x |c_j(x) − c0_j + P(x) − P(x·λ_j)|
  double hom_defect = 0.0; ///< max |Σ_k m_k c0_k| over commutator relation words
  std::vector<LevelReport> levels;
};

/// Chart coordinates of the acting generator exp(Y_{j+1}) (0-based j).
Eigen::VectorXd generator_coords(const LatticePair& pair, int j);

/// Samples f(x·λ) (Right) or f(λ·x) (Left) on the grid of f, where the
/// translated point is reduced to the fundamental domain through the lattice.
/// Under a strong Malcev order the reduced offset of coordinate i depends
/// only on original coordinates above i, so the evaluation factors into
/// exact per-line 1-D shifts swept from the top coordinate down.
FunctionGrid translate_grid(const FunctionGrid& f, const LieAlgebraQ& alg,
                            const Eigen::VectorXd& coords, Side side,
                            InterpKind kind = InterpKind::Spectral);

FunctionGrid sample_grid(const GridShape& shape,
                         const std::function<double(const std::vector<double>&)>& f);

/// Constant cocycle from homomorphism values (one per generator).
Cocycle make_hom_cocycle(const LatticePair& pair, const GridShape& shape,
                         const std::vector<double>& values);

/// Coboundary c(x, λ_j) = P(x·λ_j) − P(x) sampled pointwise from a callable
/// transfer function. The callable receives unreduced chart coordinates and
/// must descend to the quotient (be invariant under the integer lattice).
Cocycle make_coboundary(const LatticePair& pair, const GridShape& shape,
                        const std::function<double(const std::vector<double>&)>& transfer);

/// Invariant-measure average of each generator grid and the centered cocycle.
AveragedCocycle average_cocycle(const Cocycle& c);

/// Per-base-point fiber means of the centered central-generator grid; all of
/// them must vanish for a genuine centered cocycle (the fiber-average of the
/// cocycle equation). Throws FiberMeanNonzero naming the worst base point.
FunctionGrid fiber_mean_check(const FunctionGrid& centered_central, double tol);

/// Rotation solve along every fiber line of the centered central grid;
/// h satisfies c(x, e^{Y_1}) = −h(x) + h(x·e^{Y_1}) per line up to the
/// reported residuals. Resonance/TailTooFat are tagged with the base point.
FiberTransfer fiberwise_transfer(const FunctionGrid& centered_central, double a,
                                 const DiophantineCertificate* cert,
                                 const SolveOptions& opts = {});

/// c1_j = c_j + h − h∘λ_j for every generator (the transfer correction).
Cocycle apply_transfer(const LatticePair& pair, const Cocycle& centered,
                       const FunctionGrid& h, InterpKind kind = InterpKind::Spectral);

/// Drops the retired central generator (its corrected grid must be ≈ 0) and
/// replaces every other grid by its fiber means, checking fiber-constancy.
/// Throws NotFiberConstant naming the offending generator.
Cocycle descend_cocycle(const Cocycle& corrected, double tol,
                        double* fiber_residual = nullptr);

/// Max additive cocycle defect over the commutator relation words of the
/// acting lattice, evaluating c at translated points: for each relation
/// [λ_i, λ_j] = normal form, both sides are accumulated with
/// c(x, gh) = c(x, g) + c(x·g, h).
double verify_cocycle_identity(const LatticePair& pair, const Cocycle& c,
                               InterpKind kind = InterpKind::Spectral);

/// c(·, λ_gen^m) via the cocycle identity (m may be negative).
FunctionGrid cocycle_power(const LatticePair& pair, const Cocycle& c, int gen, long m,
                           InterpKind kind = InterpKind::Spectral);

/// Certifies that grid data descends to the quotient. Each coordinate line is
/// continued across its seam through the lattice reduction (the twisted
/// re-entry line, where the integer-generator action shifts lower coordinates
/// by point-dependent amounts), and the fourth-order roughness of that
/// continuation is compared with the roughness of the plain periodic wrap.
/// Restrictions of smooth invariant functions score ≈ 0 (interpolation
/// error); chart expressions that do not descend — e.g. the raw coordinate
/// t1, whose re-entry differs from its wrap by O(1) — score O(‖f‖).
double invariance_check(const LieAlgebraQ& alg, const FunctionGrid& f,
                        InterpKind kind = InterpKind::Spectral);

/// Flatness defect of a constant 𝔫-valued form candidate given as a linear
/// map (columns = images of basis vectors): max over basis pairs of
/// ‖ω[X_i,X_j] − [ωX_i, ωX_j]‖_∞; zero iff ω is a Lie algebra endomorphism.
double flatness_check(const LieAlgebraQ& alg, const Eigen::MatrixXd& omega);

/// Full recursive reduction: average, fiberwise transfer, correction,
/// descent to the quotient pair, recursion, and assembly of
/// c(x,λ) = c0(λ) − P(x) + P(x·λ) with P of grid mean zero.
ReductionResult reduce_cocycle(const LatticePair& pair, const Cocycle& c,
                               const SolveOptions& opts = {});

}  // namespace nilrig
