#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace nilrig {

/// Deterministic pairwise summation (order independent of accumulation
/// grouping used elsewhere; reproducible across runs and thread counts).
double pairwise_sum(const double* data, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

/// Shape of a sample grid on [0,1)^n in second-kind coordinates. Storage is
/// column-major in the coordinate order: coordinate 1 (the fiber direction)
/// varies fastest and is contiguous; flat index = i_1 + m_1*(i_2 + m_2*(...)).
struct GridShape {
  std::vector<int> dims;

  GridShape() = default;
  explicit GridShape(std::vector<int> d) : dims(std::move(d)) {}

  int rank() const { return static_cast<int>(dims.size()); }
  long size() const {
    long s = 1;
    for (int m : dims) s *= m;
    return s;
  }
  long fiber_len() const { return dims.empty() ? 1 : dims[0]; }
  long base_size() const { return size() / fiber_len(); }

  /// Shape of the quotient grid (first coordinate dropped).
  GridShape base() const {
    return GridShape(std::vector<int>(dims.begin() + (dims.empty() ? 0 : 1), dims.end()));
  }

  long index(const std::vector<int>& idx) const {
    long flat = 0;
    for (int d = rank() - 1; d >= 0; --d) flat = flat * dims[d] + idx[d];
    return flat;
  }
  std::vector<int> unindex(long flat) const {
    std::vector<int> idx(dims.size());
    for (int d = 0; d < rank(); ++d) {
      idx[d] = static_cast<int>(flat % dims[d]);
      flat /= dims[d];
    }
    return idx;
  }
  /// Coordinates of the sample with the given flat index.
  std::vector<double> point(long flat) const {
    std::vector<double> t(dims.size());
    for (int d = 0; d < rank(); ++d) {
      t[d] = static_cast<double>(flat % dims[d]) / dims[d];
      flat /= dims[d];
    }
    return t;
  }
  friend bool operator==(const GridShape& a, const GridShape& b) { return a.dims == b.dims; }
  friend bool operator!=(const GridShape& a, const GridShape& b) { return !(a == b); }
};

/// Real samples of a function on the uniform grid of a GridShape.
struct FunctionGrid {
  GridShape shape;
  std::vector<double> values;

  FunctionGrid() = default;
  explicit FunctionGrid(GridShape s) : shape(std::move(s)), values(static_cast<std::size_t>(shape.size()), 0.0) {}
  FunctionGrid(GridShape s, std::vector<double> v) : shape(std::move(s)), values(std::move(v)) {}

  double& operator[](long i) { return values[static_cast<std::size_t>(i)]; }
  double operator[](long i) const { return values[static_cast<std::size_t>(i)]; }

  /// Mean of the values along each fiber (first coordinate), one value per
  /// base point — the discretized fiber integral.
  FunctionGrid fiber_means() const;

  /// Total quadrature, DEFINED as the base mean of the fiber means so the
  /// discrete disintegration identity (total = base ∘ fiber) holds exactly
  /// in floating point, not just in exact arithmetic.
  double mean() const;

  double sup_norm() const;
  void subtract(double c) {
    for (auto& v : values) v -= c;
  }
  FunctionGrid& operator+=(const FunctionGrid& o);
  FunctionGrid& operator-=(const FunctionGrid& o);
};

/// sup |a - b| over the grid.
double sup_diff(const FunctionGrid& a, const FunctionGrid& b);

}  // namespace nilrig
