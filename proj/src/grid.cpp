#include "nilrig/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilrig {

double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

FunctionGrid FunctionGrid::fiber_means() const {
  const long m1 = shape.fiber_len();
  const long nb = shape.base_size();
  FunctionGrid out(shape.base());
  for (long b = 0; b < nb; ++b)
    out.values[static_cast<std::size_t>(b)] =
        pairwise_sum(values.data() + b * m1, static_cast<std::size_t>(m1)) / static_cast<double>(m1);
  return out;
}

double FunctionGrid::mean() const {
  if (shape.rank() <= 1)
    return pairwise_sum(values) / static_cast<double>(values.size());
  return fiber_means().mean();
}

double FunctionGrid::sup_norm() const {
  double s = 0.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

FunctionGrid& FunctionGrid::operator+=(const FunctionGrid& o) {
  if (shape != o.shape) throw std::logic_error("FunctionGrid: shape mismatch in +=");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

FunctionGrid& FunctionGrid::operator-=(const FunctionGrid& o) {
  if (shape != o.shape) throw std::logic_error("FunctionGrid: shape mismatch in -=");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

double sup_diff(const FunctionGrid& a, const FunctionGrid& b) {
  if (a.shape != b.shape) throw std::logic_error("sup_diff: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s = std::max(s, std::abs(a.values[i] - b.values[i]));
  return s;
}

}  // namespace nilrig
