#pragma once

#include "nilrig/polynomial.hpp"
#include "nilrig/rational.hpp"

namespace nilrig {

/// Uniform zero test across the scalar types that flow through the templated
/// symbolic machinery (exact rationals, number-field elements, polynomials,
/// doubles). Exact-zero comparison on double is intentional: it only prunes
/// structurally zero terms.
inline bool scalar_is_zero(const Rational& x) { return x.is_zero(); }
inline bool scalar_is_zero(double x) { return x == 0.0; }
template <class C>
bool scalar_is_zero(const Polynomial<C>& p) { return p.is_zero(); }
template <class S>
bool scalar_is_zero(const S& x) { return x.is_zero(); }

}  // namespace nilrig
