#include "nilrig/transfers.hpp"

#include <cmath>
#include <random>

#include "nilrig/errors.hpp"

namespace nilrig {

std::function<double(const std::vector<double>&)> torus_trig(std::vector<int> coords,
                                                             int bandwidth, unsigned seed,
                                                             double amplitude) {
  if (coords.empty() || bandwidth < 1)
    throw Error(ErrorCode::ParseError, "torus_trig", "need at least one coordinate and bandwidth >= 1");
  struct Term {
    std::vector<int> k;
    double w, phase;
  };
  const int nc = static_cast<int>(coords.size());
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::vector<Term> terms;
  std::vector<int> k(static_cast<std::size_t>(nc), -bandwidth);
  for (;;) {
    bool zero = true, lead_positive = false;
    long k2 = 0;
    for (int i = 0; i < nc; ++i) {
      int ki = k[static_cast<std::size_t>(i)];
      k2 += static_cast<long>(ki) * ki;
      if (zero && ki != 0) {
        zero = false;
        lead_positive = ki > 0;
      }
    }
    if (!zero && lead_positive)
      terms.push_back({k, amplitude * unit(rng) / (1.0 + static_cast<double>(k2)), angle(rng)});
    int i = 0;
    while (i < nc && ++k[static_cast<std::size_t>(i)] > bandwidth) k[static_cast<std::size_t>(i++)] = -bandwidth;
    if (i == nc) break;
  }
  return [coords = std::move(coords), terms = std::move(terms)](const std::vector<double>& t) {
    double v = 0.0;
    for (const auto& term : terms) {
      double phase = term.phase;
      for (std::size_t i = 0; i < coords.size(); ++i)
        phase += 2.0 * M_PI * term.k[i] * t[static_cast<std::size_t>(coords[i])];
      v += term.w * std::cos(phase);
    }
    return v;
  };
}

std::function<double(const std::vector<double>&)> poisson_kernel(int coord, double r,
                                                                 double amplitude) {
  if (!(r > -1.0 && r < 1.0))
    throw Error(ErrorCode::ParseError, "poisson_kernel", "radius must lie in (-1, 1)");
  return [coord, r, amplitude](const std::vector<double>& t) {
    double c = std::cos(2.0 * M_PI * t[static_cast<std::size_t>(coord)]);
    return amplitude * (1.0 - r * r) / (1.0 - 2.0 * r * c + r * r);
  };
}

std::function<double(const std::vector<double>&)> heisenberg_theta(double sigma,
                                                                   double amplitude) {
  if (!(sigma > 0.0))
    throw Error(ErrorCode::ParseError, "heisenberg_theta", "sigma must be positive");
  // window wide enough that dropped terms are below 1e-30 for arguments a few
  // periods outside [0,1), as produced by unreduced translated coordinates
  const int J = static_cast<int>(std::ceil(5.0 / std::sqrt(sigma))) + 4;
  return [sigma, amplitude, J](const std::vector<double>& t) {
    double lo = std::floor(t[2]);
    double v = 0.0;
    for (int j = -J; j <= J; ++j) {
      double x = t[2] - lo + j;
      v += std::exp(-M_PI * sigma * x * x) *
           std::cos(2.0 * M_PI * (t[0] + (lo - j) * t[1]));
    }
    return amplitude * v;
  };
}

}  // namespace nilrig
