#pragma once

#include <complex>
#include <vector>

#include "nilrig/grid.hpp"

namespace nilrig {

using cdouble = std::complex<double>;

/// Fourier coefficients with the analysis convention
///   modes[k] = (1/m) Σ_j values[j] e^{-2πi k j / m},
/// so values[j] = Σ_k modes[k] e^{+2πi k j / m} (mode k represents frequency
/// k for k <= m/2 and k - m beyond).
std::vector<cdouble> fft_modes(const std::vector<cdouble>& values);
std::vector<cdouble> fft_values(const std::vector<cdouble>& modes);

/// Signed frequency of bin i in a length-m transform (Nyquist maps to +m/2).
inline long fft_freq(long i, long m) { return i <= m / 2 ? i : i - m; }

/// In-place transforms along one coordinate of a column-major grid.
void fft_dim_modes(const GridShape& shape, std::vector<cdouble>& data, int dim);
void fft_dim_values(const GridShape& shape, std::vector<cdouble>& data, int dim);

std::vector<cdouble> to_complex(const std::vector<double>& v);
std::vector<double> to_real(const std::vector<cdouble>& v);  ///< drops imaginary parts

}  // namespace nilrig
