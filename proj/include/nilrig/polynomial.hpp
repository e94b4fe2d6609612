#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace nilrig {

/// Sparse multivariate polynomial over a commutative coefficient ring C.
/// Terms are keyed by exponent vectors in a std::map, so iteration order —
/// and hence every derived computation — is deterministic.
template <class C>
class Polynomial {
 public:
  using Expo = std::vector<uint16_t>;

  Polynomial() : nvars_(0) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, C c) {
    Polynomial p(nvars);
    if (!(c == C(0))) p.terms_.emplace(Expo(nvars, 0), std::move(c));
    return p;
  }
  static Polynomial variable(int nvars, int i, C coeff = C(1)) {
    Polynomial p(nvars);
    Expo e(nvars, 0);
    e[i] = 1;
    if (!(coeff == C(0))) p.terms_.emplace(std::move(e), std::move(coeff));
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, C>& terms() const { return terms_; }

  bool is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && is_zero_expo(terms_.begin()->first);
  }
  C constant_term() const {
    auto it = terms_.find(Expo(nvars_, 0));
    return it == terms_.end() ? C(0) : it->second;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += x;
      if (s > d) d = s;
    }
    return d;
  }

  void add_term(const Expo& e, const C& c) {
    Expo key = e;
    if (static_cast<int>(key.size()) < nvars_) key.resize(nvars_, 0);
    auto [it, inserted] = terms_.emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    } else if (it->second == C(0)) {
      terms_.erase(it);
    }
  }

  /// The same polynomial viewed in a larger variable set (new variables
  /// appended). Polynomials of different nvars promote before combining.
  Polynomial promoted(int nvars) const {
    if (nvars == nvars_) return *this;
    Polynomial r(nvars);
    for (const auto& [e, c] : terms_) {
      Expo ex = e;
      ex.resize(nvars, 0);
      r.terms_.emplace(std::move(ex), c);
    }
    return r;
  }

  Polynomial operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    if (o.nvars_ > nvars_) *this = promoted(o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.nvars_ > nvars_) *this = promoted(o.nvars_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) {
      int nv = std::max(a.nvars_, b.nvars_);
      return a.promoted(nv) * b.promoted(nv);
    }
    Polynomial r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Expo e(a.nvars_);
        for (int i = 0; i < a.nvars_; ++i) e[i] = static_cast<uint16_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  friend Polynomial operator*(const C& s, const Polynomial& p) {
    Polynomial r(p.nvars_);
    if (s == C(0)) return r;
    for (const auto& [e, c] : p.terms_) {
      C v = s * c;
      if (!(v == C(0))) r.terms_.emplace(e, std::move(v));
    }
    return r;
  }
  Polynomial& operator*=(const C& s) { return *this = s * *this; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) {
      int nv = std::max(a.nvars_, b.nvars_);
      return a.promoted(nv).terms_ == b.promoted(nv).terms_;
    }
    return a.terms_ == b.terms_;
  }
  bool is_zero_value() const { return terms_.empty(); }

  /// Evaluates with values of type T; `conv` maps coefficients C -> T.
  template <class T, class Conv>
  T eval_with(const std::vector<T>& x, Conv conv) const {
    T acc = T(0);
    for (const auto& [e, c] : terms_) {
      T term = conv(c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) term = term * x[i];
      acc = acc + term;
    }
    return acc;
  }
  C eval(const std::vector<C>& x) const {
    return eval_with<C>(x, [](const C& c) { return c; });
  }

  /// Maps coefficients into another ring.
  template <class T, class Fn>
  Polynomial<T> map_coeffs(Fn fn) const {
    Polynomial<T> r(nvars_);
    for (const auto& [e, c] : terms_) {
      T v = fn(c);
      if (!(v == T(0))) r.mutable_terms().emplace(e, std::move(v));
    }
    return r;
  }

  std::map<Expo, C>& mutable_terms() { return terms_; }

  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        os << "*" << names[i];
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  static bool is_zero_expo(const Expo& e) {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  int nvars_;
  std::map<Expo, C> terms_;
};

}  // namespace nilrig
