#pragma once

#include <vector>

#include "nilrig/diophantine.hpp"
#include "nilrig/fft.hpp"

namespace nilrig {

struct RotationSolveOptions {
  long K = 32;               ///< mode cutoff, must satisfy K <= m/2
  double tol = 1e-6;
  /// Smallest admissible |−1 + e^{2πika}|; 0 = derive C·K^{−α_exp}/2 from the
  /// certificate, or fall back to the numeric guard 1e-8 without one (a
  /// divisor below ~sqrt(eps) amplifies its mode beyond double precision).
  double divisor_floor = 0.0;
};

struct DivisorSample {
  long k = 0;
  double abs_divisor = 0.0;   ///< |−1 + e^{2πika}|
  double coeff_mag = 0.0;     ///< |f̂(k)|
  bool solved = false;
};

struct RotationSolveResult {
  std::vector<double> h;      ///< ĥ(0) = 0 normalization
  double c0 = 0.0;            ///< removed mean f̂(0)
  double residual_sup = 0.0;  ///< measured sup |h∘R_a − h − (f − c0)| on the grid
  double error_bound = 0.0;   ///< certified-estimate of the off-grid truncation error
  double divisor_min = 2.0;   ///< smallest divisor magnitude among solved modes
  double divisor_floor = 0.0;
  double tail_mass = 0.0;     ///< Σ|f̂(k)| over dropped grid modes (|k| > K)
  double decay_M = 0.0;       ///< fitted tail envelope |f̂(k)| <= M·|k|^{−m}
  double decay_m = 0.0;
  long K_eff = 0;             ///< cutoff actually used (Nyquist excluded)
  std::vector<DivisorSample> divisors;  ///< one per k = 1..K_eff
};

/// Solves h(s+a) − h(s) = f(s) − f̂(0) on the m-point circle grid by division
/// of Fourier coefficients, with resonance detection against the divisor
/// floor and a tail-decay estimate for the truncation error.
/// Throws Resonance / TailTooFat / GridMismatch.
RotationSolveResult solve_rotation_coboundary(const std::vector<double>& f, double a,
                                              const DiophantineCertificate* cert,
                                              const RotationSolveOptions& opts = {});

/// Trigonometric evaluation of grid samples at an arbitrary shifted point set:
/// returns g with g[j] = (band-limited interpolant of f)(j/m + delta).
std::vector<double> rotate_samples(const std::vector<double>& f, double delta);

}  // namespace nilrig
