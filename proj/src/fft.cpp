#include "nilrig/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace nilrig {

namespace {
Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}
}  // namespace

std::vector<cdouble> fft_modes(const std::vector<cdouble>& values) {
  std::vector<cdouble> out(values.size());
  engine().fwd(out, values);
  const double inv = 1.0 / static_cast<double>(values.size());
  for (auto& c : out) c *= inv;
  return out;
}

std::vector<cdouble> fft_values(const std::vector<cdouble>& modes) {
  std::vector<cdouble> out(modes.size());
  engine().inv(out, modes);
  const double m = static_cast<double>(modes.size());
  for (auto& c : out) c *= m;
  return out;
}

namespace {

template <bool Forward>
void fft_dim_impl(const GridShape& shape, std::vector<cdouble>& data, int dim) {
  const int n = shape.rank();
  const long md = shape.dims[dim];
  long stride = 1;
  for (int d = 0; d < dim; ++d) stride *= shape.dims[d];
  long outer = 1;
  for (int d = dim + 1; d < n; ++d) outer *= shape.dims[d];

  std::vector<cdouble> line(static_cast<std::size_t>(md));
  for (long o = 0; o < outer; ++o) {
    for (long in = 0; in < stride; ++in) {
      const long base = in + stride * md * o;
      for (long i = 0; i < md; ++i) line[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(base + stride * i)];
      std::vector<cdouble> tr = Forward ? fft_modes(line) : fft_values(line);
      for (long i = 0; i < md; ++i) data[static_cast<std::size_t>(base + stride * i)] = tr[static_cast<std::size_t>(i)];
    }
  }
}

}  // namespace

void fft_dim_modes(const GridShape& shape, std::vector<cdouble>& data, int dim) {
  fft_dim_impl<true>(shape, data, dim);
}

void fft_dim_values(const GridShape& shape, std::vector<cdouble>& data, int dim) {
  fft_dim_impl<false>(shape, data, dim);
}

std::vector<cdouble> to_complex(const std::vector<double>& v) {
  std::vector<cdouble> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = cdouble(v[i], 0.0);
  return out;
}

std::vector<double> to_real(const std::vector<cdouble>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].real();
  return out;
}

}  // namespace nilrig
