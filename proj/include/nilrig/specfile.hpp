#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilrig/grid.hpp"
#include "nilrig/lie_algebra.hpp"
#include "nilrig/upoly.hpp"

namespace nilrig {

/// Parsed algebra spec file (.alg): structure constants plus the optional
/// graded rational data needed to build a Diophantine lattice pair.
///
///   algebra h3
///   dim 3
///   basis Z Y X              # optional, defaults to X1..Xn
///   bracket 2 3 1 1          # [X_2, X_3] += 1 * X_1   (1-based, coeff p/q)
///   grading 2 1 1            # optional positive integer degrees
///   minpoly x^3 - 2          # optional monic integer polynomial in x,
///                            # or an ascending coefficient list: -2 0 0 1
///   isolating 5/4 13/10      # rational interval isolating the root used
///
/// Lines are independent; '#' starts a comment. Indices are 1-based in the
/// file and stored 0-based here.
struct AlgebraSpec {
  std::string name;
  AlgebraData algebra;
  std::vector<int> degrees;       // empty when the file has no grading
  std::optional<UPoly> min_poly;
  std::optional<QInterval> isolating;

  /// True when the file carries everything build_diophantine_pair needs.
  bool has_pair_data() const {
    return !degrees.empty() && min_poly.has_value() && isolating.has_value();
  }
};

/// Named transfer-function request from a cocycle spec file. Coordinates are
/// 1-based in the file and stored 0-based.
struct TransferSpec {
  std::string kind = "none";  // none | torus_trig | poisson | theta
  std::vector<int> coords;    // torus_trig: coordinates the polynomial uses
  int bandwidth = 4;          // torus_trig: max |frequency| per coordinate
  unsigned seed = 1;          // torus_trig: RNG seed for weights and phases
  double amplitude = 1.0;
  int coord = 1;              // poisson: driven coordinate
  double r = 0.5;             // poisson: spectral radius in (-1, 1)
  double sigma = 4.0;         // theta: Gaussian width
};

/// Parsed cocycle spec file (.coc): either symbolic (homomorphism values per
/// lattice generator plus a library transfer function whose coboundary is
/// added) or raw per-generator grids loaded from .grid files.
///
///   cocycle h3_roundtrip
///   hom 0 0.3 -0.7
///   transfer torus_trig coords=2,3 bandwidth=4 seed=11 amplitude=1
///   resolution 64 32 32      # default grid, overridable on the command line
///
///   cocycle raw_example
///   resolution 8 8
///   grid 1 c1.grid           # generator index + path relative to this file
///   grid 2 c2.grid
struct CocycleSpec {
  std::string name;
  std::vector<double> hom;      // one value per lattice generator; may be empty
  TransferSpec transfer;
  std::vector<int> resolution;  // may be empty
  std::vector<std::pair<int, std::string>> grid_files;  // (generator 0-based, path)
};

AlgebraSpec parse_algebra_text(const std::string& text, const std::string& filename);
AlgebraSpec parse_algebra_file(const std::string& path);

CocycleSpec parse_cocycle_text(const std::string& text, const std::string& filename);
CocycleSpec parse_cocycle_file(const std::string& path);

/// Grid file (.grid): header `grid <name>`, `dims m1 ... mn`, optional
/// `layout column-major`, then m1*...*mn samples in column-major order (first
/// coordinate fastest). Written with 17 significant digits so a write/read
/// round trip is bit-exact.
struct NamedGrid {
  std::string name;
  FunctionGrid values;
};

NamedGrid read_grid_file(const std::string& path);
void write_grid_file(const std::string& path, const FunctionGrid& g, const std::string& name);

/// Materializes the transfer function a cocycle spec names, checking
/// parameters against the chart dimension. Throws ParseError for unknown
/// kinds or out-of-range parameters.
std::function<double(const std::vector<double>&)> make_transfer(const TransferSpec& t, int dim);

}  // namespace nilrig
