#pragma once

#include <functional>
#include <vector>

namespace nilrig {

/// Smooth test functions on chart coordinates, used as transfer functions for
/// coboundary construction and as invariance-check subjects. All callables
/// take unreduced chart coordinates (any reals) and are 1-periodic in every
/// coordinate they read unless stated otherwise.

/// Random real trigonometric polynomial in the listed chart coordinates
/// (0-based indices): amplitude · Σ r_k cos(2π k·t + φ_k) / (1 + |k|²) over
/// one representative per ±k pair with 0 < |k|_∞ ≤ bandwidth. Deterministic
/// in the seed.
std::function<double(const std::vector<double>&)> torus_trig(std::vector<int> coords,
                                                             int bandwidth, unsigned seed,
                                                             double amplitude = 1.0);

/// Poisson kernel pulled back through one chart coordinate:
/// amplitude · (1 − r²) / (1 − 2r cos(2πt) + r²). Smooth with full spectrum
/// (mode k carries weight r^|k|), so quadrature and interpolation errors
/// decay geometrically instead of hitting an exact band limit — the honest
/// test subject for resolution-doubling convergence.
std::function<double(const std::vector<double>&)> poisson_kernel(int coord, double r,
                                                                 double amplitude = 1.0);

/// Fiber-rich invariant function on the Heisenberg chart ([X2,X3] = X1):
/// amplitude · Σ_j exp(−πσ(t₃+j)²) cos(2π(t₁ − j t₂)). Satisfies the twisted
/// periodicity f(t₁, t₂, t₃+1) = f(t₁+t₂, t₂, t₃) exactly, so it descends to
/// the quotient while carrying genuine frequency content along the fiber.
std::function<double(const std::vector<double>&)> heisenberg_theta(double sigma,
                                                                   double amplitude = 1.0);

}  // namespace nilrig
