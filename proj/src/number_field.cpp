#include "nilrig/number_field.hpp"

#include <sstream>
#include <stdexcept>

#include "nilrig/errors.hpp"
#include "nilrig/linalg.hpp"

namespace nilrig {

namespace {

// Residue of p modulo the (monic) minimal polynomial, padded to `degree`.
std::vector<Rational> residue(const UPoly& p, const UPoly& monic, int degree) {
  auto [q, r] = UPoly::divmod(p, monic);
  (void)q;
  std::vector<Rational> c(static_cast<std::size_t>(degree), Rational(0));
  for (int i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r.coeff(i);
  return c;
}

UPoly poly_of(const std::vector<Rational>& c) { return UPoly(c); }

}  // namespace

std::shared_ptr<const NumberField> NumberField::create(const UPoly& min_poly, QInterval isolating) {
  if (min_poly.degree() < 1)
    throw Error(ErrorCode::ParseError, "number_field", "minimal polynomial must have degree >= 1");
  auto nf = std::shared_ptr<NumberField>(new NumberField());
  nf->monic_ = min_poly.monic();
  nf->primitive_ = min_poly.primitive_integer();
  nf->degree_ = min_poly.degree();
  nf->irr_ = check_irreducible(nf->monic_);
  if (nf->irr_ == Irreducibility::RationalRootFound || nf->irr_ == Irreducibility::FactorFound)
    throw Error(ErrorCode::ReduciblePolynomial, "number_field",
                "minimal polynomial factors over the rationals: " + nf->monic_.str());
  if (!(isolating.lo < isolating.hi))
    throw Error(ErrorCode::ParseError, "number_field", "isolating interval is empty");
  auto chain = sturm_chain(nf->monic_);
  int roots = count_roots(chain, isolating.lo, isolating.hi);
  if (roots != 1)
    throw Error(ErrorCode::ParseError, "number_field",
                "interval [" + isolating.lo.str() + ", " + isolating.hi.str() + "] contains " +
                    std::to_string(roots) + " roots of " + nf->monic_.str() +
                    " (need exactly 1)");
  nf->iso_ = isolating;
  return nf;
}

QInterval NumberField::refine(const Rational& width) const {
  std::lock_guard<std::mutex> lock(mu_);
  int slo = monic_(iso_.lo).sign();
  while ((iso_.hi - iso_.lo) > width) {
    Rational mid = (iso_.lo + iso_.hi) / Rational(2);
    int s = monic_(mid).sign();
    if (s == 0) {
      // Rational root (degree-1 field): pin a symmetric interval around it.
      Rational h = width / Rational(4);
      iso_ = QInterval{mid - h, mid + h};
      break;
    }
    if (s == slo)
      iso_.lo = mid;
    else
      iso_.hi = mid;
  }
  return iso_;
}

double NumberField::approx_double() const {
  QInterval iv = refine(Rational(Integer(1), Integer(1) << 62));
  return ((iv.lo + iv.hi) / Rational(2)).to_double();
}

// ---------------------------------------------------------------------------
// QAlpha

QAlpha::QAlpha(std::shared_ptr<const NumberField> k, std::vector<Rational> coeffs) {
  if (!k) throw std::logic_error("QAlpha: null field");
  k_ = std::move(k);
  c_ = residue(UPoly(std::move(coeffs)), k_->min_poly(), k_->degree());
}

QAlpha QAlpha::alpha(std::shared_ptr<const NumberField> k) {
  return QAlpha(std::move(k), {Rational(0), Rational(1)});
}

QAlpha QAlpha::from_rational(std::shared_ptr<const NumberField> k, Rational r) {
  return QAlpha(std::move(k), {std::move(r)});
}

bool QAlpha::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool QAlpha::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Rational QAlpha::as_rational() const {
  if (!is_rational()) throw std::logic_error("QAlpha::as_rational: value is irrational");
  return c_[0];
}

void QAlpha::adopt(const QAlpha& other) {
  if (!other.k_) return;
  if (!k_) {
    Rational r = c_.empty() ? Rational(0) : c_[0];
    k_ = other.k_;
    c_.assign(static_cast<std::size_t>(k_->degree()), Rational(0));
    if (!c_.empty()) c_[0] = r;
    return;
  }
  if (k_ == other.k_ || k_->min_poly().coeffs() == other.k_->min_poly().coeffs()) return;
  throw std::logic_error("QAlpha: mixing elements of distinct number fields");
}

QAlpha QAlpha::operator-() const {
  QAlpha r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

QAlpha& QAlpha::operator+=(const QAlpha& o) {
  if (!o.k_ && o.is_zero()) return *this;
  adopt(o);
  if (!k_ && !o.k_) {
    c_[0] += o.c_[0];
    return *this;
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

QAlpha& QAlpha::operator-=(const QAlpha& o) {
  if (!o.k_ && o.is_zero()) return *this;
  adopt(o);
  if (!k_ && !o.k_) {
    c_[0] -= o.c_[0];
    return *this;
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

QAlpha operator*(const QAlpha& a, const QAlpha& b) {
  QAlpha x = a, y = b;
  x.adopt(y);
  y.adopt(x);
  if (!x.k_) return QAlpha(x.c_[0] * y.c_[0]);
  UPoly prod = poly_of(x.c_) * poly_of(y.c_);
  return QAlpha(x.k_, prod.coeffs());
}

QAlpha& QAlpha::operator*=(const QAlpha& o) { return *this = *this * o; }

QAlpha QAlpha::inverse() const {
  if (is_zero()) throw std::domain_error("QAlpha::inverse: division by zero");
  if (!k_) return QAlpha(Rational(1) / c_[0]);
  // Extended Euclid in Q[x]: u*c + v*m = gcd = const, inverse = u/const mod m.
  UPoly r0 = k_->min_poly(), r1 = poly_of(c_);
  UPoly t0, t1 = UPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = UPoly::divmod(r0, r1);
    UPoly t = t0 - q * t1;
    r0 = r1;
    r1 = r;
    t0 = t1;
    t1 = t;
  }
  if (r0.degree() != 0)
    throw std::logic_error("QAlpha::inverse: minimal polynomial is not irreducible");
  UPoly inv = t0 * UPoly::constant(Rational(1) / r0.coeff(0));
  return QAlpha(k_, inv.coeffs());
}

bool operator==(const QAlpha& a, const QAlpha& b) {
  QAlpha d = a;
  d -= b;
  return d.is_zero();
}

QAlpha QAlpha::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  QAlpha acc(1), base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base = base * base;
    e >>= 1;
  }
  if (k_ && !acc.k_) acc.adopt(*this);
  return acc;
}

QInterval QAlpha::enclose(const Rational& width) const {
  if (!k_) return QInterval{c_[0], c_[0]};
  Rational w = width;
  UPoly p = poly_of(c_);
  for (int iter = 0; iter < 400; ++iter) {
    QInterval ia = k_->refine(w);
    QInterval iv = eval_interval(p, ia);
    if ((iv.hi - iv.lo) <= width) return iv;
    w = w / Rational(16);
  }
  throw std::logic_error("QAlpha::enclose: refinement did not converge");
}

double QAlpha::to_double() const {
  QInterval iv = enclose(Rational(Integer(1), Integer(1) << 60));
  return ((iv.lo + iv.hi) / Rational(2)).to_double();
}

std::string QAlpha::str(const std::string& sym) const {
  if (is_zero()) return "0";
  return poly_of(c_).str(sym);
}

// ---------------------------------------------------------------------------
// Derived algebraic numbers

UPoly minimal_polynomial(const QAlpha& beta) {
  if (!beta.field() || beta.is_rational()) {
    Rational r = beta.field() ? beta.as_rational() : beta.coeffs()[0];
    return UPoly({-r, Rational(1)});
  }
  int d = beta.field()->degree();
  // Rows: residue coordinates of beta^0, beta^1, ... until linearly dependent.
  std::vector<QAlpha> powers{QAlpha::from_rational(beta.field(), Rational(1))};
  for (int j = 1; j <= d; ++j) powers.push_back(powers.back() * beta);
  for (int j = 1; j <= d; ++j) {
    QMatrix A(d, j);
    QVector b(d);
    for (int i = 0; i < d; ++i) {
      for (int col = 0; col < j; ++col) A(i, col) = powers[static_cast<std::size_t>(col)].coeffs()[static_cast<std::size_t>(i)];
      b(i) = -powers[static_cast<std::size_t>(j)].coeffs()[static_cast<std::size_t>(i)];
    }
    auto sol = solve_linear<Rational>(A, b);
    if (!sol) continue;
    std::vector<Rational> cf(static_cast<std::size_t>(j) + 1, Rational(0));
    for (int col = 0; col < j; ++col) cf[static_cast<std::size_t>(col)] = (*sol)(col);
    cf[static_cast<std::size_t>(j)] = Rational(1);
    return UPoly(cf);
  }
  throw std::logic_error("minimal_polynomial: no dependency up to field degree");
}

std::shared_ptr<const NumberField> as_algebraic_number(const QAlpha& beta) {
  UPoly mp = minimal_polynomial(beta);
  if (mp.degree() == 1) {
    Rational r = -mp.coeff(0);
    Rational h(1, 2);
    return NumberField::create(mp, QInterval{r - h, r + h});
  }
  auto chain = sturm_chain(mp);
  Rational w(1, 16);
  for (int iter = 0; iter < 200; ++iter) {
    QInterval iv = beta.enclose(w);
    // Widen marginally so beta is strictly interior (count_roots is (lo, hi]).
    Rational pad = (iv.hi - iv.lo) / Rational(4);
    QInterval cand{iv.lo - pad, iv.hi + pad};
    if (count_roots(chain, cand.lo, cand.hi) == 1) return NumberField::create(mp, cand);
    w = w / Rational(16);
  }
  throw std::logic_error("as_algebraic_number: could not isolate the derived root");
}

}  // namespace nilrig
