#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nilrig/bch.hpp"
#include "nilrig/upoly.hpp"

namespace nilrig {

/// A real algebraic number α presented by an irreducible minimal polynomial
/// and an isolating interval with rational endpoints (exactly one real root
/// inside, certified by a Sturm chain at construction). Refinement of the
/// interval is cached and thread-safe; all arithmetic in ℚ(α) is exact
/// residue-polynomial arithmetic.
class NumberField {
 public:
  /// Validates irreducibility (complete for degree <= 4; Declared beyond)
  /// and that the interval isolates exactly one real root.
  static std::shared_ptr<const NumberField> create(const UPoly& min_poly, QInterval isolating);

  int degree() const { return degree_; }
  const UPoly& min_poly() const { return monic_; }          ///< monic over ℚ
  const UPoly& min_poly_int() const { return primitive_; }  ///< primitive integer form
  Irreducibility irreducibility() const { return irr_; }

  /// Isolating interval refined to width <= `width` (monotone, cached).
  QInterval refine(const Rational& width) const;
  double approx_double() const;

 private:
  NumberField() = default;
  UPoly monic_, primitive_;
  int degree_ = 0;
  Irreducibility irr_ = Irreducibility::Proven;
  mutable std::mutex mu_;
  mutable QInterval iso_;
};

/// An element of ℚ(α): polynomial residue Σ c_i α^i, deg < deg(min_poly).
/// A QAlpha constructed without a field is a plain rational constant that
/// adopts the field of the first operand it combines with (this is what lets
/// generic templated code write QAlpha(0), QAlpha(1)).
class QAlpha {
 public:
  QAlpha() : c_{Rational(0)} {}
  QAlpha(int v) : c_{Rational(v)} {}
  explicit QAlpha(Rational r) : c_{std::move(r)} {}
  QAlpha(std::shared_ptr<const NumberField> k, std::vector<Rational> coeffs);

  static QAlpha alpha(std::shared_ptr<const NumberField> k);
  static QAlpha from_rational(std::shared_ptr<const NumberField> k, Rational r);

  const std::shared_ptr<const NumberField>& field() const { return k_; }
  /// Residue coefficients (size = field degree, or 1 for field-less values).
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational as_rational() const;  ///< requires is_rational()

  QAlpha operator-() const;
  QAlpha& operator+=(const QAlpha& o);
  QAlpha& operator-=(const QAlpha& o);
  QAlpha& operator*=(const QAlpha& o);
  friend QAlpha operator+(QAlpha a, const QAlpha& b) { a += b; return a; }
  friend QAlpha operator-(QAlpha a, const QAlpha& b) { a -= b; return a; }
  friend QAlpha operator*(const QAlpha& a, const QAlpha& b);
  QAlpha inverse() const;
  friend QAlpha operator/(const QAlpha& a, const QAlpha& b) { return a * b.inverse(); }
  friend bool operator==(const QAlpha& a, const QAlpha& b);
  friend bool operator!=(const QAlpha& a, const QAlpha& b) { return !(a == b); }

  QAlpha pow(int e) const;

  /// Encloses the value in a rational interval of width <= `width`.
  QInterval enclose(const Rational& width) const;
  double to_double() const;
  std::string str(const std::string& sym = "a") const;

 private:
  void adopt(const QAlpha& other);
  std::shared_ptr<const NumberField> k_;  // null = plain rational
  std::vector<Rational> c_;
};

template <>
inline QAlpha scalar_from_rational<QAlpha>(const Rational& r) { return QAlpha(r); }

/// Monic minimal polynomial of β over ℚ (first linear dependency among the
/// residue vectors of 1, β, β², …).
UPoly minimal_polynomial(const QAlpha& beta);

/// β presented as an algebraic number in its own right: minimal polynomial
/// plus an isolating interval derived from the ambient field's refinement.
std::shared_ptr<const NumberField> as_algebraic_number(const QAlpha& beta);

}  // namespace nilrig

namespace Eigen {
template <>
struct NumTraits<nilrig::QAlpha> {
  using Real = nilrig::QAlpha;
  using NonInteger = nilrig::QAlpha;
  using Nested = nilrig::QAlpha;
  using Literal = int;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64,
  };
  static nilrig::QAlpha epsilon() { return nilrig::QAlpha(0); }
  static nilrig::QAlpha dummy_precision() { return nilrig::QAlpha(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen
