#include "nilrig/upoly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nilrig {

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  int db = b.degree();
  Rational lead_inv = Rational(1) / b.leading();
  std::vector<Rational> quo(std::max<int>(0, a.degree() - db + 1), Rational(0));
  for (int d = a.degree(); d >= db; --d) {
    Rational cur = rem[d];
    if (cur.is_zero()) continue;
    Rational q = cur * lead_inv;
    quo[d - db] = q;
    for (int i = 0; i <= db; ++i) rem[d - db + i] -= q * b.c_[i];
  }
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly UPoly::primitive_integer() const {
  if (is_zero()) return UPoly();
  Integer den_lcm(1);
  for (const auto& c : c_) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    den_lcm = den_lcm / g * c.den();
  }
  std::vector<Rational> ints(c_.size());
  Integer content(0);
  for (size_t i = 0; i < c_.size(); ++i) {
    ints[i] = c_[i] * Rational(den_lcm);
    Integer n = ints[i].num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
  }
  if (sgn(content) == 0) content = 1;
  for (auto& c : ints) c /= Rational(content);
  UPoly out(std::move(ints));
  if (out.leading().sign() < 0) out = -out;
  return out;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    const Rational& c = c_[d];
    if (c.is_zero()) continue;
    Rational a = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    bool unit = (a == Rational(1));
    if (d == 0 || !unit) os << a.str();
    if (d > 0) {
      if (!unit) os << "*";
      os << var;
      if (d > 1) os << "^" << d;
    }
  }
  return os.str();
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = UPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  UPoly sq = p;
  UPoly g = gcd(p, p.derivative());
  if (g.degree() > 0) sq = UPoly::divmod(p, g).first;  // squarefree part
  std::vector<UPoly> chain;
  chain.push_back(sq);
  chain.push_back(sq.derivative());
  while (!chain.back().is_zero()) {
    const UPoly& s0 = chain[chain.size() - 2];
    const UPoly& s1 = chain.back();
    UPoly r = UPoly::divmod(s0, s1).second;
    chain.push_back(-r);
  }
  chain.pop_back();  // drop trailing zero
  return chain;
}

static int sign_variations(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0, prev = 0;
  for (const auto& p : chain) {
    int s = p(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int count_roots(const std::vector<UPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

QInterval operator+(const QInterval& a, const QInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
QInterval operator-(const QInterval& a, const QInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

QInterval operator*(const QInterval& a, const QInterval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational lo = c[0], hi = c[0];
  for (int i = 1; i < 4; ++i) {
    if (c[i] < lo) lo = c[i];
    if (c[i] > hi) hi = c[i];
  }
  return {lo, hi};
}

QInterval pow_interval(const QInterval& a, int e) {
  QInterval acc{Rational(1), Rational(1)};
  for (int i = 0; i < e; ++i) acc = acc * a;
  return acc;
}

QInterval eval_interval(const UPoly& p, const QInterval& x) {
  QInterval acc{Rational(0), Rational(0)};
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * x;
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

QInterval refine_root(const UPoly& p, QInterval iv, const Rational& target_width) {
  int slo = p(iv.lo).sign();
  int shi = p(iv.hi).sign();
  if (slo == 0) return {iv.lo, iv.lo};
  if (shi == 0) return {iv.hi, iv.hi};
  if (slo == shi) throw std::invalid_argument("refine_root: interval does not bracket a sign change");
  while (iv.width() > target_width) {
    Rational mid = iv.mid();
    int sm = p(mid).sign();
    if (sm == 0) return {mid, mid};
    if (sm == slo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  return iv;
}

static std::vector<Integer> positive_divisors(Integer n) {
  std::vector<Integer> divs;
  n = ::abs(n);
  if (sgn(n) == 0) return divs;
  for (Integer d(1); d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      Integer q = n / d;
      if (q != d) divs.push_back(q);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<Rational> rational_roots(const UPoly& p) {
  std::vector<Rational> roots;
  UPoly q = p.primitive_integer();
  if (q.is_zero()) return roots;
  // Strip x^k factors: x=0 roots.
  int low = 0;
  while (low <= q.degree() && q.coeff(low).is_zero()) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low > q.degree()) return roots;
  Integer a0 = q.coeff(low).num();
  Integer an = q.leading().num();
  for (const Integer& num : positive_divisors(a0)) {
    for (const Integer& den : positive_divisors(an)) {
      for (int s : {1, -1}) {
        Rational cand(s * num, den);
        if (q(cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Irreducibility check_irreducible(const UPoly& p) {
  int d = p.degree();
  if (d <= 0) return Irreducibility::FactorFound;  // constants are not irreducible
  if (d == 1) return Irreducibility::Proven;
  if (!rational_roots(p).empty()) return Irreducibility::RationalRootFound;
  if (d <= 3) return Irreducibility::Proven;  // no rational root => irreducible for deg 2,3
  if (d == 4) {
    // No linear factors; check quadratic factors of the primitive form.
    // For q = c4 x^4 + ... + c0 = (a x^2 + b x + c)(d x^2 + e x + f) with
    // integer unknowns, a*d = c4 and c*f = c0; enumerate divisor pairs and
    // solve the two middle equations.
    UPoly q = p.primitive_integer();
    Integer c0 = q.coeff(0).num(), c1 = q.coeff(1).num(), c2 = q.coeff(2).num(),
            c3 = q.coeff(3).num(), c4 = q.coeff(4).num();
    auto lead_divs = positive_divisors(c4);
    auto const_divs = positive_divisors(c0);
    auto try_factors = [&](const Integer& a, const Integer& dd, const Integer& b,
                           const Integer& e, const Integer& c, const Integer& f) {
      UPoly f1({Rational(c), Rational(b), Rational(a)});
      UPoly f2({Rational(f), Rational(e), Rational(dd)});
      return f1 * f2 == q;
    };
    for (const Integer& a : lead_divs) {
      Integer dd = c4 / a;  // exact since a | c4
      for (const Integer& cfa : const_divs) {
        for (int sc : {1, -1}) {
          Integer c = sc * cfa;
          Integer f = c0 / c;  // exact since cfa | c0
          // Unknowns (b, e) must satisfy the x^3 and x^1 equations:
          //   [dd  a][b]   [c3]
          //   [f   c][e] = [c1]
          Integer det = dd * c - f * a;
          if (det != 0) {
            Integer bn = c3 * c - a * c1;
            Integer en = dd * c1 - f * c3;
            if (bn % det != 0 || en % det != 0) continue;
            Integer b = bn / det;
            Integer e = en / det;
            if (a * f + b * e + c * dd == c2 && try_factors(a, dd, b, e, c, f))
              return Irreducibility::FactorFound;
          } else {
            // Singular system (dc = af). Substitute e = (c3 - dd*b)/a into the
            // x^2 equation; b then satisfies dd*b^2 - c3*b + a*(c2 - f*a - c*dd) = 0.
            Integer disc = c3 * c3 - 4 * dd * a * (c2 - f * a - c * dd);
            if (sgn(disc) < 0) continue;
            Integer root;
            mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
            if (root * root != disc) continue;
            for (int sr : {1, -1}) {
              Integer bn = c3 + sr * root;
              if (bn % (2 * dd) != 0) continue;
              Integer b = bn / (2 * dd);
              Integer en = c3 - dd * b;
              if (en % a != 0) continue;
              Integer e = en / a;
              if (b * f + c * e == c1 && try_factors(a, dd, b, e, c, f))
                return Irreducibility::FactorFound;
            }
          }
        }
      }
    }
    return Irreducibility::Proven;
  }
  return Irreducibility::Declared;
}

UPoly parse_upoly(const std::string& text, const std::string& var) {
  // Grammar: poly := term (('+'|'-') term)* ; term := coeff ['*'] [var ['^' int]] | var ['^' int]
  std::vector<Rational> coeffs;
  auto add_term = [&](const Rational& c, int deg) {
    if (deg >= static_cast<int>(coeffs.size())) coeffs.resize(deg + 1, Rational(0));
    coeffs[deg] += c;
  };
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  bool expect_term = true;
  int pending_sign = 1;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    char ch = text[i];
    if (ch == '+' || ch == '-') {
      pending_sign *= (ch == '-') ? -1 : 1;
      ++i;
      expect_term = true;
      continue;
    }
    if (!expect_term) throw std::invalid_argument("polynomial parse error near '" + text.substr(i) + "'");
    Rational coeff(1);
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/' || text[j] == '.'))
        ++j;
      coeff = Rational::parse(text.substr(i, j - i));
      i = j;
      saw_coeff = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
    }
    int deg = 0;
    if (i < text.size() && text.compare(i, var.size(), var) == 0) {
      i += var.size();
      deg = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw std::invalid_argument("polynomial parse error: exponent expected");
        deg = std::stoi(text.substr(i, j - i));
        i = j;
      }
    } else if (!saw_coeff) {
      throw std::invalid_argument("polynomial parse error near '" + text.substr(i) + "'");
    }
    add_term(Rational(pending_sign) * coeff, deg);
    pending_sign = 1;
    expect_term = false;
  }
  if (expect_term) throw std::invalid_argument("polynomial parse error: trailing operator");
  return UPoly(std::move(coeffs));
}

}  // namespace nilrig
