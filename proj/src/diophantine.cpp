#include "nilrig/diophantine.hpp"

#include <mpfr.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "nilrig/errors.hpp"
#include "nilrig/parallel.hpp"

namespace nilrig {

namespace {

/// Minimal RAII wrapper over an mpfr_t at fixed precision.
class Mpfr {
 public:
  explicit Mpfr(int bits) { mpfr_init2(v_, bits); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  void set(const Rational& r, mpfr_rnd_t rnd) { mpfr_set_q(v_, r.raw().get_mpq_t(), rnd); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

}  // namespace

QInterval integer_distance(const QInterval& x) {
  // Nearest integer to the midpoint; the true nearest integer of any point in
  // the interval is one of m-1, m, m+1 when the interval is narrow. Take the
  // pointwise min/max of |x - j| over those candidates.
  Rational mid = x.mid();
  Integer m = (mid + Rational(1, 2)).floor();
  Rational lo_best(-1), hi_best(-1);
  for (int dj = -1; dj <= 1; ++dj) {
    Rational j(Integer(m + dj));
    // |x - j| over [x.lo, x.hi]
    Rational a = x.lo - j, b = x.hi - j;
    Rational lo, hi;
    if (a.sign() >= 0) { lo = a; hi = b; }
    else if (b.sign() <= 0) { lo = -b; hi = -a; }
    else { lo = Rational(0); hi = std::max(-a, b, [](const Rational& u, const Rational& v) { return u < v; }); }
    if (lo_best.sign() < 0 || lo < lo_best) lo_best = lo;
    if (hi_best.sign() < 0 || hi < hi_best) hi_best = hi;
  }
  return QInterval{lo_best, hi_best};
}

DiophantineCertificate diophantine_certificate(const std::shared_ptr<const NumberField>& a,
                                               const CertOptions& opts) {
  if (!a) throw std::logic_error("diophantine_certificate: null number");
  int d = a->degree();
  if (d < 2)
    throw Error(ErrorCode::RationalInput, "certificate",
                "rotation number is rational (" + a->min_poly().str() +
                "); no small-divisor lower bound exists");

  // Liouville bound from the primitive integer minimal polynomial m:
  // for p/q with |a - p/q| <= 1,  1/q^d <= |m(p/q)| = |m'(xi)| |a - p/q|
  // with xi within 1 of a, so |a - p/q| >= C_L / q^d with
  // C_L = min(1, 1/M), M = sum_i |m'_i| B^i an upper bound for |m'| on
  // [a-1, a+1]. Then dist(k a, Z) >= C_L |k|^(1-d) and, since
  // |sin(pi t)| >= 2 dist(t, Z),  2|sin(pi k a)| >= 4 C_L |k|^(1-d).
  const UPoly m = a->min_poly_int();
  const UPoly dm = m.derivative();
  QInterval iso = a->refine(Rational(1, 16));
  Rational B = std::max(abs(iso.lo - Rational(1)), abs(iso.hi + Rational(1)),
                        [](const Rational& u, const Rational& v) { return u < v; });
  Rational M(0);
  for (int i = 0; i <= dm.degree(); ++i) M += abs(dm.coeff(i)) * pow(B, i);
  Rational CL = (M > Rational(1)) ? Rational(1) / M : Rational(1);

  DiophantineCertificate cert;
  cert.C = Rational(4) * CL;
  cert.alpha_exp = d - 1;
  cert.kmax_checked = opts.kmax;
  cert.precision_bits = opts.precision_bits;
  cert.number = a;
  cert.a_value = a->approx_double();
  {
    std::ostringstream os;
    os << "liouville(" << m.str() << ")";
    if (a->irreducibility() == Irreducibility::Declared) os << "/irreducibility-declared";
    cert.provenance = os.str();
  }

  // --- verified spot check on 0 < k <= kmax (negative k by symmetry of
  // dist(.,Z)): 2 sin(pi dist(k a, Z)) >= C k^(-alpha) must hold with margin.
  const int prec = opts.precision_bits + 64;
  // One refinement so that k*width stays far below the smallest admissible
  // divisor even at k = kmax.
  Rational w = Rational(1, 4) * CL * pow(Rational(opts.kmax), long(1 - d)) / Rational(opts.kmax);
  QInterval ia = a->refine(w);

  struct Worst {
    double margin = -1.0;
    long k = 0;
    bool violated = false;
  };
  const long kmax = opts.kmax;
  auto body = [&](long k) -> Worst {
    QInterval ka{Rational(k) * ia.lo, Rational(k) * ia.hi};
    QInterval dist = integer_distance(ka);
    Worst wst;
    wst.k = k;
    if (dist.lo.is_zero()) {
      // Enclosure touches an integer: the bound cannot be certified at this
      // precision, which for an algebraic irrational of this degree means a
      // genuine violation of the claimed constant.
      wst.violated = true;
      wst.margin = 0.0;
      return wst;
    }
    // lhs = 2 sin(pi dist_lo), rounded down throughout (dist_lo <= 1/2 keeps
    // sin on its increasing branch, so down-rounding the argument is sound).
    Mpfr pi(prec), t(prec), lhs(prec), rhs(prec), ratio(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDD);
    t.set(dist.lo, MPFR_RNDD);
    mpfr_mul(t.get(), t.get(), pi.get(), MPFR_RNDD);
    mpfr_sin(lhs.get(), t.get(), MPFR_RNDD);
    mpfr_mul_ui(lhs.get(), lhs.get(), 2, MPFR_RNDD);
    // rhs = C * k^(1-d), rounded up.
    Rational rhs_q = cert.C * pow(Rational(k), long(-cert.alpha_exp));
    rhs.set(rhs_q, MPFR_RNDU);
    if (mpfr_cmp(lhs.get(), rhs.get()) < 0) wst.violated = true;
    mpfr_div(ratio.get(), lhs.get(), rhs.get(), MPFR_RNDN);
    wst.margin = ratio.to_double();
    return wst;
  };

  Worst worst;
  std::vector<Worst> all(static_cast<std::size_t>(kmax));
  parallel_for(1, kmax + 1, opts.threads, [&](long k) { all[static_cast<std::size_t>(k - 1)] = body(k); });
  for (const auto& r : all) {
    if (worst.margin < 0 || r.margin < worst.margin) worst = r;
  }
  if (worst.violated) {
    std::ostringstream os;
    os << "small-divisor bound violated at k=" << worst.k << " (margin " << worst.margin
       << "): 2|sin(pi k a)| < " << cert.C.str() << " * k^-" << cert.alpha_exp;
    throw Error(ErrorCode::CertificateSpotCheckFailed, "certificate", os.str());
  }
  cert.min_margin = worst.margin;
  return cert;
}

}  // namespace nilrig
