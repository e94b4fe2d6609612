#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "nilrig/rational.hpp"

namespace nilrig {

/// Univariate polynomial over ℚ, dense coefficients low degree first.
/// Normalized: no trailing zero coefficients (zero polynomial = empty).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(Rational r) { return UPoly({std::move(r)}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double operator()(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(long(i)) * c_[i];
    return UPoly(std::move(d));
  }

  UPoly operator-() const {
    auto d = c_;
    for (auto& x : d) x = -x;
    return UPoly(std::move(d));
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
    return UPoly(std::move(d));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Rational> d(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(d));
  }
  friend UPoly operator*(const Rational& s, const UPoly& p) {
    auto d = p.c_;
    for (auto& x : d) x *= s;
    return UPoly(std::move(d));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division: returns (quotient, remainder) with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);

  UPoly monic() const {
    if (is_zero()) return UPoly();
    return (Rational(1) / leading()) * (*this);
  }

  /// Scales to integer coefficients with content 1 and positive leading
  /// coefficient (primitive integer form).
  UPoly primitive_integer() const;

  /// Human-readable form in the given variable name.
  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

UPoly gcd(UPoly a, UPoly b);

/// Sturm chain of p (squarefree not required; works on p made squarefree
/// internally via p/gcd(p,p')).
std::vector<UPoly> sturm_chain(const UPoly& p);

/// Number of distinct real roots of p in the half-open interval (lo, hi].
int count_roots(const std::vector<UPoly>& chain, const Rational& lo, const Rational& hi);

struct QInterval {
  Rational lo, hi;
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / Rational(2); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

QInterval operator+(const QInterval& a, const QInterval& b);
QInterval operator-(const QInterval& a, const QInterval& b);
QInterval operator*(const QInterval& a, const QInterval& b);
QInterval pow_interval(const QInterval& a, int e);

/// Evaluates p over an interval by interval arithmetic (directed, exact
/// rational endpoints; conservative).
QInterval eval_interval(const UPoly& p, const QInterval& x);

/// Bisects an isolating interval of p until width <= target. The interval
/// must bracket a sign change of p.
QInterval refine_root(const UPoly& p, QInterval iv, const Rational& target_width);

/// All rational roots of p (exact; via divisor search on the primitive
/// integer form). Deterministic order.
std::vector<Rational> rational_roots(const UPoly& p);

enum class Irreducibility { Proven, RationalRootFound, FactorFound, Declared };

/// Irreducibility over ℚ: complete for degree <= 4 (rational-root test plus,
/// for quartics, exhaustive search for monic-integer quadratic factors after
/// the polynomial is made primitive). Degree >= 5: rational roots only; if
/// none found the result is Declared (accepted on user declaration).
Irreducibility check_irreducible(const UPoly& p);

/// Parses "x^3 - 2", "2*x^2 + x - 1/3", etc. Integer or rational
/// coefficients; '*' optional; variable name must match `var`.
UPoly parse_upoly(const std::string& text, const std::string& var = "x");

}  // namespace nilrig
