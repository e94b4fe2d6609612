#include "nilrig/group_law.hpp"

#include <cmath>

namespace nilrig {

using PolyQ = Polynomial<Rational>;

GroupLaw<Rational> compile_group_law(const LieAlgebraQ& alg) {
  const int n = alg.dim();
  GroupLaw<Rational> law;
  law.n = n;

  // Product: work in 2n variables, x = vars 0..n-1, y = vars n..2n-1.
  {
    auto algP = alg.map_scalar<PolyQ>(
        [](const Rational& c) { return PolyQ::constant(0, c); });
    VectorOf<PolyQ> xs = VectorOf<PolyQ>::Constant(n, PolyQ(2 * n));
    VectorOf<PolyQ> ys = xs;
    for (int i = 0; i < n; ++i) {
      xs(i) = PolyQ::variable(2 * n, i);
      ys(i) = PolyQ::variable(2 * n, n + i);
    }
    VectorOf<PolyQ> z = bch_product(algP, log_from_coords(algP, xs), log_from_coords(algP, ys));
    VectorOf<PolyQ> t = coords_from_log(algP, z);
    law.product.reserve(n);
    for (int k = 0; k < n; ++k) law.product.push_back(t(k).promoted(2 * n));
  }

  // Inverse: n variables; log(g^{-1}) = -log(g).
  {
    auto algP = alg.map_scalar<PolyQ>(
        [](const Rational& c) { return PolyQ::constant(0, c); });
    VectorOf<PolyQ> xs = VectorOf<PolyQ>::Constant(n, PolyQ(n));
    for (int i = 0; i < n; ++i) xs(i) = PolyQ::variable(n, i);
    VectorOf<PolyQ> z = log_from_coords(algP, xs);
    for (int k = 0; k < n; ++k) z(k) = -z(k);
    VectorOf<PolyQ> t = coords_from_log(algP, z);
    law.inverse.reserve(n);
    for (int k = 0; k < n; ++k) law.inverse.push_back(t(k).promoted(n));
  }
  return law;
}

const GroupLaw<Rational>& group_law(const LieAlgebraQ& alg) {
  auto& cache = alg.law_cache();
  std::call_once(cache.once, [&] {
    cache.law = std::make_shared<const GroupLaw<Rational>>(compile_group_law(alg));
  });
  return *cache.law;
}

QVector law_mul(const GroupLaw<Rational>& law, const QVector& x, const QVector& y) {
  const int n = law.n;
  std::vector<Rational> in(2 * n);
  for (int i = 0; i < n; ++i) in[i] = x(i);
  for (int i = 0; i < n; ++i) in[n + i] = y(i);
  QVector out(n);
  for (int k = 0; k < n; ++k) out(k) = law.product[k].eval(in);
  return out;
}

QVector law_inv(const GroupLaw<Rational>& law, const QVector& x) {
  const int n = law.n;
  std::vector<Rational> in(n);
  for (int i = 0; i < n; ++i) in[i] = x(i);
  QVector out(n);
  for (int k = 0; k < n; ++k) out(k) = law.inverse[k].eval(in);
  return out;
}

namespace {
FlatPoly flatten(const Polynomial<Rational>& p) {
  FlatPoly f;
  for (const auto& [e, c] : p.terms()) {
    FlatPoly::Term t;
    t.c = c.to_double();
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t.pows.push_back({static_cast<int>(i), static_cast<int>(e[i])});
    f.terms.push_back(std::move(t));
  }
  return f;
}
}  // namespace

GroupLawNumeric compile_numeric(const GroupLaw<Rational>& law) {
  GroupLawNumeric num;
  num.n = law.n;
  for (const auto& p : law.product) num.product.push_back(flatten(p));
  for (const auto& p : law.inverse) num.inverse.push_back(flatten(p));
  return num;
}

ChartReductionQ reduce_in_chart(const GroupLaw<Rational>& law, const QVector& t) {
  const int n = law.n;
  ChartReductionQ r;
  r.gamma_powers.resize(n);
  r.g0 = t;
  for (int i = n - 1; i >= 0; --i) {
    Integer m = r.g0(i).floor();
    r.gamma_powers[i] = m;
    if (sgn(m) != 0) {
      QVector peel = QVector::Constant(n, Rational(0));
      peel(i) = -Rational(m);
      r.g0 = law_mul(law, peel, r.g0);
    }
  }
  // γ = e^{m_n X_n}···e^{m_1 X_1}.
  QVector g = QVector::Constant(n, Rational(0));
  for (int i = n - 1; i >= 0; --i) {
    if (sgn(r.gamma_powers[i]) == 0) continue;
    QVector f = QVector::Constant(n, Rational(0));
    f(i) = Rational(r.gamma_powers[i]);
    g = law_mul(law, g, f);
  }
  r.gamma = std::move(g);
  return r;
}

void reduce_in_chart_fast(const GroupLawNumeric& law, const double* t, double* g0, long* powers) {
  const int n = law.n;
  double cur[16];
  for (int i = 0; i < n; ++i) cur[i] = t[i];
  double peel[16], next[16];
  for (int i = n - 1; i >= 0; --i) {
    double m = std::floor(cur[i]);
    powers[i] = static_cast<long>(m);
    if (m != 0) {
      for (int j = 0; j < n; ++j) peel[j] = 0;
      peel[i] = -m;
      law.mul(peel, cur, next);
      for (int j = 0; j < n; ++j) cur[j] = next[j];
    }
  }
  for (int i = 0; i < n; ++i) g0[i] = cur[i];
}

Eigen::VectorXd gamma_coords(const GroupLawNumeric& law, const long* powers) {
  const int n = law.n;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  double f[16], out[16];
  for (int i = n - 1; i >= 0; --i) {
    if (powers[i] == 0) continue;
    for (int j = 0; j < n; ++j) f[j] = 0;
    f[i] = static_cast<double>(powers[i]);
    law.mul(g.data(), f, out);
    for (int j = 0; j < n; ++j) g(j) = out[j];
  }
  return g;
}

}  // namespace nilrig
