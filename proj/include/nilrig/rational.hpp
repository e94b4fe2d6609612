#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nilrig {

using Integer = mpz_class;

/// Exact rational scalar. Wraps GMP's mpq_class behind eager value semantics:
/// every operator returns a finished mpq_class, never a gmpxx expression
/// template, so Rational composes safely with Eigen's own expression system.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<long>(n)) {}
  Rational(long long n) : v_(Integer(std::to_string(n))) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
  Rational(const Integer& num, const Integer& den) : v_(num, den) { v_.canonicalize(); }
  explicit Rational(const mpq_class& q) : v_(q) {}

  /// Parses "p", "p/q", or decimal strings like "-0.25" (exact: 25/100).
  static Rational parse(std::string_view s);

  const mpq_class& raw() const { return v_; }
  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Largest integer <= value.
  Integer floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ / b.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(Rational base, long e) {
  if (e < 0) { base = Rational(1) / base; e = -e; }
  Rational acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Dense exact vector/matrix aliases used throughout the symbolic layer.
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace nilrig

namespace Eigen {

template <>
struct NumTraits<nilrig::Rational> {
  using Real = nilrig::Rational;
  using NonInteger = nilrig::Rational;
  using Nested = nilrig::Rational;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 32,
    MulCost = 32,
  };
  static nilrig::Rational epsilon() { return nilrig::Rational(0); }
  static nilrig::Rational dummy_precision() { return nilrig::Rational(0); }
  static nilrig::Rational highest() { return nilrig::Rational(0); }
  static nilrig::Rational lowest() { return nilrig::Rational(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
