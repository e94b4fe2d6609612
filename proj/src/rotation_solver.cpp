#include "nilrig/rotation_solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nilrig/errors.hpp"
#include "nilrig/grid.hpp"

namespace nilrig {

namespace {

/// Least-squares fit of log(env) against log(k) over octave maxima of the
/// spectrum; returns {M, m} for the envelope |f̂(k)| <= M k^(-m). Octaves
/// whose maximum sits at or below `noise` are skipped: a mode at rounding
/// level says nothing about decay, and one such outlier in log space would
/// dominate the fit.
std::pair<double, double> fit_decay(const std::vector<double>& coeff_mag, long lo, long hi,
                                    double noise) {
  std::vector<double> xs, ys;
  for (long start = std::max<long>(2, lo); start < hi; start *= 2) {
    long stop = std::min(hi, start * 2);
    double best = 0.0;
    long at = start;
    for (long k = start; k < stop; ++k)
      if (coeff_mag[static_cast<std::size_t>(k)] > best) {
        best = coeff_mag[static_cast<std::size_t>(k)];
        at = k;
      }
    if (best > std::max(noise, 1e-300)) {
      xs.push_back(std::log(static_cast<double>(at)));
      ys.push_back(std::log(best));
    }
  }
  if (xs.size() < 2) return {0.0, std::numeric_limits<double>::infinity()};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double n = static_cast<double>(xs.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double logM = (sy - slope * sx) / n;
  return {std::exp(logM), -slope};
}

}  // namespace

RotationSolveResult solve_rotation_coboundary(const std::vector<double>& f, double a,
                                              const DiophantineCertificate* cert,
                                              const RotationSolveOptions& opts) {
  const long m = static_cast<long>(f.size());
  if (m < 4) throw Error(ErrorCode::GridMismatch, "rotation_solve", "grid too small");
  if (opts.K < 1 || opts.K > m / 2) {
    std::ostringstream msg;
    msg << "mode cutoff K=" << opts.K << " must lie in [1, m/2] for m=" << m;
    throw Error(ErrorCode::GridMismatch, "rotation_solve", msg.str());
  }

  RotationSolveResult res;
  res.c0 = pairwise_sum(f) / static_cast<double>(m);
  std::vector<double> g = f;
  for (auto& v : g) v -= res.c0;

  std::vector<cdouble> fm = fft_modes(to_complex(g));
  fm[0] = 0.0;

  double floor = opts.divisor_floor;
  if (floor <= 0.0) {
    if (cert) {
      floor = cert->C.to_double() * std::pow(static_cast<double>(opts.K),
                                             -static_cast<double>(cert->alpha_exp)) / 2.0;
    } else {
      // No certified lower bound: use a numeric resonance guard. A divisor
      // below ~sqrt(eps) amplifies its mode by > 1e8, which is garbage in
      // double precision whatever the arithmetic of the rotation number.
      floor = 1e-8;
    }
  }
  res.divisor_floor = floor;
  res.K_eff = std::min(opts.K, m / 2 - 1);

  std::vector<double> coeff_mag(static_cast<std::size_t>(m / 2 + 1), 0.0);
  for (long k = 1; k <= m / 2; ++k) coeff_mag[static_cast<std::size_t>(k)] = std::abs(fm[static_cast<std::size_t>(k)]);

  std::vector<cdouble> hm(static_cast<std::size_t>(m), cdouble(0.0, 0.0));
  for (long k = 1; k <= res.K_eff; ++k) {
    double phase = 2.0 * M_PI * static_cast<double>(k) * a;
    cdouble d(std::cos(phase) - 1.0, std::sin(phase));
    double absd = std::abs(2.0 * std::sin(M_PI * static_cast<double>(k) * a));
    double cmag = coeff_mag[static_cast<std::size_t>(k)];
    DivisorSample sample{k, absd, cmag, false};
    if (absd < floor) {
      if (cmag > opts.tol) {
        std::ostringstream msg;
        msg << "small divisor |{-1+e^(2 pi i k a)}| = " << absd << " below floor " << floor
            << " at k=" << k << " with |f^(k)| = " << cmag << " > tol " << opts.tol
            << " (rotation number a=" << a << " resonates)";
        throw Error(ErrorCode::Resonance, "rotation_solve", msg.str());
      }
      res.divisors.push_back(sample);
      continue;
    }
    cdouble hk = fm[static_cast<std::size_t>(k)] / d;
    hm[static_cast<std::size_t>(k)] = hk;
    hm[static_cast<std::size_t>(m - k)] = std::conj(hk);
    res.divisor_min = std::min(res.divisor_min, absd);
    sample.solved = true;
    res.divisors.push_back(sample);
  }

  // Everything beyond the cutoff (Nyquist included) is dropped; its measured
  // coefficient mass bounds the on-grid part of the equation residual.
  double scale = 0.0;
  for (long k = 1; k <= m / 2; ++k) scale = std::max(scale, coeff_mag[static_cast<std::size_t>(k)]);
  for (long k = res.K_eff + 1; k <= m / 2; ++k)
    res.tail_mass += coeff_mag[static_cast<std::size_t>(k)] * (k == m / 2 ? 1.0 : 2.0);

  auto [M, mdec] = fit_decay(coeff_mag, std::max<long>(2, opts.K / 4), m / 2 + 1, 1e-13 * scale);
  res.decay_M = M;
  res.decay_m = mdec;

  // The tail is immaterial when it is rounding noise relative to the line's
  // own spectrum or too small to ever push the residual near the tolerance
  // (an all-noise line, e.g. where the input vanishes, fits a nonsense slope).
  bool matters = res.tail_mass > std::max(1e-13 * std::max(scale, 1e-300), 0.01 * opts.tol);
  double beyond = 0.0;
  if (!matters) {
    res.decay_M = 0.0;
    res.decay_m = std::numeric_limits<double>::infinity();
  } else {
    if (cert && mdec <= static_cast<double>(cert->alpha_exp) + 1.0) {
      std::ostringstream msg;
      msg << "fitted spectral decay |f^(k)| <= " << M << " k^-" << mdec
          << " does not dominate the divisor exponent alpha=" << cert->alpha_exp
          << " (need m > alpha+1); the transfer series cannot converge";
      throw Error(ErrorCode::TailTooFat, "rotation_solve", msg.str());
    }
    if (mdec > 1.0 && std::isfinite(mdec))
      beyond = 2.0 * M * std::pow(static_cast<double>(m) / 2.0, 1.0 - mdec) / (mdec - 1.0);
  }

  // Solution and measured residual: h(s+a) synthesized by exact phase shift.
  std::vector<cdouble> hshift = hm;
  for (long k = 0; k < m; ++k) {
    double ph = 2.0 * M_PI * static_cast<double>(fft_freq(k, m)) * a;
    hshift[static_cast<std::size_t>(k)] *= cdouble(std::cos(ph), std::sin(ph));
  }
  res.h = to_real(fft_values(hm));
  std::vector<double> hs = to_real(fft_values(hshift));
  for (long j = 0; j < m; ++j)
    res.residual_sup = std::max(res.residual_sup,
                                std::abs(hs[static_cast<std::size_t>(j)] - res.h[static_cast<std::size_t>(j)] -
                                         g[static_cast<std::size_t>(j)]));

  res.error_bound = std::max(res.residual_sup, res.tail_mass + beyond);
  if (res.error_bound > opts.tol) {
    std::ostringstream msg;
    msg << "truncation error bound " << res.error_bound << " exceeds tol " << opts.tol
        << " at cutoff K=" << opts.K << " (tail mass " << res.tail_mass << ", decay fit M=" << M
        << ", m=" << mdec << ")";
    throw Error(ErrorCode::TailTooFat, "rotation_solve", msg.str());
  }
  return res;
}

std::vector<double> rotate_samples(const std::vector<double>& f, double delta) {
  const long m = static_cast<long>(f.size());
  std::vector<cdouble> fm = fft_modes(to_complex(f));
  for (long k = 0; k < m; ++k) {
    if (k == m / 2 && m % 2 == 0) {
      // Nyquist bin: real projection of the shifted cosine.
      fm[static_cast<std::size_t>(k)] *= std::cos(M_PI * static_cast<double>(m) * delta);
      continue;
    }
    double ph = 2.0 * M_PI * static_cast<double>(fft_freq(k, m)) * delta;
    fm[static_cast<std::size_t>(k)] *= cdouble(std::cos(ph), std::sin(ph));
  }
  return to_real(fft_values(fm));
}

}  // namespace nilrig
