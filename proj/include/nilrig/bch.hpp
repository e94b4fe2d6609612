#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nilrig/lie_algebra.hpp"
#include "nilrig/scalar.hpp"

namespace nilrig {

/// exp/log/BCH in Malcev charts, exact for nilpotent algebras.
///
/// Strategy: compute log(exp X · exp Y) in the free associative algebra on
/// the concrete basis, truncated beyond the nilpotency step s, then project
/// each word X_{w1}···X_{wm} onto the Lie algebra by the
/// Dynkin–Specht–Wever map (1/m)·[X_{w1},[X_{w2},…[X_{w_{m-1}},X_{wm}]…]],
/// evaluated through the structure constants. Truncation loses nothing: the
/// degree filtration is respected by all series involved, and every word of
/// length > s projects into the (s+1)-th lower-central term, which is zero.

/// Converts exact rational constants into the working scalar. Polynomials
/// become 0-variable constants (they promote on first combination).
template <class S>
S scalar_from_rational(const Rational& r);

template <>
inline Rational scalar_from_rational<Rational>(const Rational& r) { return r; }
template <>
inline double scalar_from_rational<double>(const Rational& r) { return r.to_double(); }
template <>
inline Polynomial<Rational> scalar_from_rational<Polynomial<Rational>>(const Rational& r) {
  return Polynomial<Rational>::constant(0, r);
}

namespace tensor {

using Word = std::vector<uint8_t>;

template <class S>
using Series = std::map<Word, S>;  // word -> coefficient, empty word = degree 0

template <class S>
void add_term(Series<S>& s, const Word& w, const S& c) {
  if (scalar_is_zero(c)) return;
  auto [it, inserted] = s.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (scalar_is_zero(it->second)) s.erase(it);
  }
}

template <class S>
Series<S> mul(const Series<S>& a, const Series<S>& b, int maxdeg) {
  Series<S> out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > maxdeg) continue;
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      add_term(out, w, ca * cb);
    }
  }
  return out;
}

/// exp(Σ_i x_i e_i) truncated at maxdeg: the degree-m part is
/// Σ_{|w|=m} (Π_t x_{w_t}) / m! · e_w.
template <class S>
Series<S> exp_of_linear(const std::vector<S>& x, int maxdeg) {
  const int n = static_cast<int>(x.size());
  Series<S> out;
  add_term(out, Word{}, scalar_from_rational<S>(Rational(1)));
  std::vector<int> support;
  for (int i = 0; i < n; ++i)
    if (!scalar_is_zero(x[i])) support.push_back(i);
  if (support.empty()) return out;

  // Words over the support, built degree by degree.
  std::vector<std::pair<Word, S>> layer;
  layer.push_back({Word{}, scalar_from_rational<S>(Rational(1))});
  Rational factorial(1);
  for (int m = 1; m <= maxdeg; ++m) {
    factorial *= Rational(m);
    std::vector<std::pair<Word, S>> next;
    next.reserve(layer.size() * support.size());
    for (const auto& [w, c] : layer)
      for (int i : support) {
        Word w2 = w;
        w2.push_back(static_cast<uint8_t>(i));
        next.push_back({std::move(w2), c * x[i]});
      }
    S inv_fact = scalar_from_rational<S>(Rational(1) / factorial);
    for (const auto& [w, c] : next) add_term(out, w, c * inv_fact);
    layer = std::move(next);
  }
  return out;
}

/// log(E) for a series with unit constant term, truncated at maxdeg.
template <class S>
Series<S> log_of(const Series<S>& e, int maxdeg) {
  Series<S> u = e;
  auto it = u.find(Word{});
  if (it != u.end()) u.erase(it);  // u = E - 1, strictly positive degree
  Series<S> out;
  Series<S> upow = u;
  Rational sign(1);
  for (int k = 1; k <= maxdeg; ++k) {
    S factor = scalar_from_rational<S>(sign / Rational(k));
    for (const auto& [w, c] : upow) add_term(out, w, c * factor);
    sign = -sign;
    if (k < maxdeg) upow = mul(upow, u, maxdeg);
  }
  return out;
}

}  // namespace tensor

/// Dynkin–Specht–Wever projection of a tensor series onto the algebra.
template <class S>
VectorOf<S> dsw_project(const LieAlgebra<S>& alg, const tensor::Series<S>& t) {
  const int n = alg.dim();
  VectorOf<S> out = VectorOf<S>::Constant(n, S(0));
  for (const auto& [w, c] : t) {
    const int m = static_cast<int>(w.size());
    if (m == 0) continue;
    VectorOf<S> v = VectorOf<S>::Constant(n, S(0));
    v(w[m - 1]) = scalar_from_rational<S>(Rational(1));
    for (int t2 = m - 2; t2 >= 0; --t2) v = alg.ad_basis(w[t2], v);
    S weight = c * scalar_from_rational<S>(Rational(1, m));
    for (int k = 0; k < n; ++k)
      if (!scalar_is_zero(v(k))) out(k) += weight * v(k);
  }
  return out;
}

/// Z with exp(Z) = exp(X)·exp(Y); exact for nilpotent algebras.
template <class S>
VectorOf<S> bch_product(const LieAlgebra<S>& alg, const VectorOf<S>& x, const VectorOf<S>& y) {
  const int s = alg.step();
  std::vector<S> xv(x.data(), x.data() + x.size());
  std::vector<S> yv(y.data(), y.data() + y.size());
  tensor::Series<S> e = tensor::mul(tensor::exp_of_linear(xv, s), tensor::exp_of_linear(yv, s), s);
  tensor::Series<S> l = tensor::log_of(e, s);
  return dsw_project(alg, l);
}

/// Second-kind coordinates (t_1..t_n) with e^Z = e^{t_1 X_1}···e^{t_n X_n}.
/// Peels from the top index down; exact because all BCH correction terms fall
/// into span{X_1..X_{i-1}} under a strong Malcev order.
template <class S>
VectorOf<S> coords_from_log(const LieAlgebra<S>& alg, VectorOf<S> z) {
  const int n = alg.dim();
  VectorOf<S> t = VectorOf<S>::Constant(n, S(0));
  for (int i = n - 1; i >= 0; --i) {
    t(i) = z(i);
    if (scalar_is_zero(t(i))) continue;
    VectorOf<S> peel = VectorOf<S>::Constant(n, S(0));
    peel(i) = -t(i);
    z = bch_product(alg, z, peel);
  }
  return t;
}

/// log(e^{t_1 X_1}···e^{t_n X_n}).
template <class S>
VectorOf<S> log_from_coords(const LieAlgebra<S>& alg, const VectorOf<S>& t) {
  const int n = alg.dim();
  VectorOf<S> z = VectorOf<S>::Constant(n, S(0));
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (scalar_is_zero(t(i))) continue;
    VectorOf<S> xi = VectorOf<S>::Constant(n, S(0));
    xi(i) = t(i);
    if (first) {
      z = xi;
      first = false;
    } else {
      z = bch_product(alg, z, xi);
    }
  }
  return z;
}

}  // namespace nilrig
