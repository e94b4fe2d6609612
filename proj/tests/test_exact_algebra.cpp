#include <vector>

#include "doctest.h"
#include "nilrig/bch.hpp"
#include "nilrig/errors.hpp"
#include "nilrig/group_law.hpp"
#include "nilrig/lattice.hpp"
#include "nilrig/lie_algebra.hpp"
#include "oracles.hpp"

using namespace nilrig;

namespace {

QVector qvec(std::initializer_list<Rational> xs) {
  QVector v(static_cast<long>(xs.size()));
  long i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

bool qeq(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) return false;
  for (long i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

/// Deterministic small-rational point cloud: denominators cycle 2,3,5,7 and
/// numerators sweep a fixed pattern, giving exact, sign-mixed inputs.
std::vector<QVector> sample_points(int n, int count) {
  const int dens[4] = {2, 3, 5, 7};
  std::vector<QVector> out;
  for (int s = 0; s < count; ++s) {
    QVector v(n);
    for (int i = 0; i < n; ++i) {
      int num = ((s + 1) * (i + 2) * 7 + 3 * i - 5 * s) % 11 - 5;
      v(i) = Rational(num, dens[(s + i) % 4]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

void check_law_against_matrices(const AlgebraData& data, const oracle::Rep& rep) {
  LieAlgebraQ alg = validate_algebra(data);
  const GroupLaw<Rational>& law = group_law(alg);
  auto pts = sample_points(alg.dim(), 5);
  for (const QVector& x : pts)
    for (const QVector& y : pts) {
      QVector xy = law_mul(law, x, y);
      CHECK(oracle::chart_matrix(rep, xy) ==
            oracle::chart_matrix(rep, x) * oracle::chart_matrix(rep, y));
    }
  for (const QVector& x : pts) {
    // inverse law against the matrix inverse (exp of the negated log)
    QVector xi = law_inv(law, x);
    CHECK(oracle::chart_matrix(rep, xi) * oracle::chart_matrix(rep, x) ==
          oracle::QMat::eye(rep[0].n));
    // first-kind log against the matrix log
    QVector z = log_from_coords(alg, x);
    CHECK(oracle::algebra_matrix(rep, z) == oracle::mat_log(oracle::chart_matrix(rep, x)));
  }
}

void check_exact_properties(const AlgebraData& data, bool integral_lattice = true) {
  LieAlgebraQ alg = validate_algebra(data);
  const GroupLaw<Rational>& law = group_law(alg);
  auto pts = sample_points(alg.dim(), 4);
  // associativity of the compiled law
  for (const QVector& x : pts)
    for (const QVector& y : pts)
      for (const QVector& z : pts)
        CHECK(qeq(law_mul(law, law_mul(law, x, y), z), law_mul(law, x, law_mul(law, y, z))));
  // chart <-> log round trips
  for (const QVector& x : pts) {
    CHECK(qeq(coords_from_log(alg, log_from_coords(alg, x)), x));
    CHECK(qeq(log_from_coords(alg, coords_from_log(alg, x)), x));
  }
  if (!integral_lattice) return;
  // lattice reduction recomposes exactly and lands in [0,1)^n
  for (const QVector& x : pts) {
    ChartReductionQ red = reduce_mod_lattice(alg, x);
    for (long i = 0; i < red.g0.size(); ++i) {
      CHECK(red.g0(i) >= Rational(0));
      CHECK(red.g0(i) < Rational(1));
      CHECK(red.gamma(i).is_integer());
    }
    CHECK(qeq(law_mul(law, red.gamma, red.g0), x));
  }
}

}  // namespace

TEST_CASE("corpus validates with the expected step and series dims") {
  struct Row {
    AlgebraData data;
    int step;
    std::vector<long> dims;
  };
  const Row rows[] = {
      {oracle::abelian(1), 1, {1}},
      {oracle::abelian(4), 1, {4}},
      {oracle::h3(), 2, {3, 1}},
      {oracle::h5(), 2, {5, 1}},
      {oracle::ut4(), 3, {6, 3, 1}},
      {oracle::filiform4(), 3, {4, 2, 1}},
  };
  for (const Row& r : rows) {
    LieAlgebraQ alg = validate_algebra(r.data);
    CHECK(alg.step() == r.step);
    LowerCentralSeries lcs = lower_central_series(alg);
    REQUIRE(lcs.subspaces.size() == r.dims.size());
    for (size_t l = 0; l < r.dims.size(); ++l) CHECK(lcs.subspaces[l].rows() == r.dims[l]);
  }
}

TEST_CASE("validation rejects structurally broken inputs") {
  SUBCASE("bracket of a vector with itself") {
    AlgebraData d;
    d.dim = 2;
    d.brackets = {{0, 0, 1, Rational(1)}};
    CHECK_THROWS_AS(validate_algebra(d), Error);
  }
  SUBCASE("index out of range") {
    AlgebraData d;
    d.dim = 2;
    d.brackets = {{0, 1, 2, Rational(1)}};
    CHECK_THROWS_AS(validate_algebra(d), Error);
  }
  SUBCASE("strong order violated: bracket climbs above both factors") {
    AlgebraData d;
    d.dim = 3;
    d.brackets = {{0, 1, 2, Rational(1)}};  // [X1,X2] = X3
    try {
      validate_algebra(d);
      FAIL("expected strong-order rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotStrongMalcevOrder);
    }
  }
  SUBCASE("genuine Jacobi violation under a strong order") {
    // [X2,X5]=X1, [X3,X4]=X2, [X3,X5]=X1, [X4,X5]=X3: the cyclic sum over
    // (X3,X4,X5) is [X2,X5] = X1, not zero.
    AlgebraData d;
    d.dim = 5;
    d.brackets = {{1, 4, 0, Rational(1)},
                  {2, 3, 1, Rational(1)},
                  {2, 4, 0, Rational(1)},
                  {3, 4, 2, Rational(1)}};
    try {
      validate_algebra(d);
      FAIL("expected JacobiViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::JacobiViolation);
      CHECK(std::string(e.what()).find("X3") != std::string::npos);
    }
  }
  SUBCASE("non-nilpotent despite strong order: ad X4 fixes X3") {
    AlgebraData d;
    d.dim = 4;
    d.brackets = {{2, 3, 2, Rational(1)}};  // [X3,X4] = X3
    try {
      validate_algebra(d);
      FAIL("expected NotNilpotent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotNilpotent);
    }
  }
}

TEST_CASE("BCH and chart conversions match hand results on h3") {
  LieAlgebraQ alg = validate_algebra(oracle::h3());
  // exp(X2) exp(X3) = exp(X2 + X3 + 1/2 [X2,X3])
  QVector e2 = qvec({Rational(0), Rational(1), Rational(0)});
  QVector e3 = qvec({Rational(0), Rational(0), Rational(1)});
  CHECK(qeq(bch_product(alg, e2, e3), qvec({Rational(1, 2), Rational(1), Rational(1)})));
  // the chart point (0,1,1) is exp(X2)exp(X3), so its log is the product above
  CHECK(qeq(log_from_coords(alg, qvec({Rational(0), Rational(1), Rational(1)})),
             qvec({Rational(1, 2), Rational(1), Rational(1)})));
  // second-kind coordinates invert that exactly
  CHECK(qeq(coords_from_log(alg, qvec({Rational(1, 2), Rational(1), Rational(1)})),
             qvec({Rational(0), Rational(1), Rational(1)})));
  // a central shift in the log moves only the first chart coordinate
  CHECK(qeq(coords_from_log(alg, qvec({Rational(-1, 2), Rational(1), Rational(1)})),
             qvec({Rational(-1), Rational(1), Rational(1)})));
}

TEST_CASE("compiled group law is exact and associative on the corpus") {
  check_exact_properties(oracle::abelian(3));
  check_exact_properties(oracle::h3());
  check_exact_properties(oracle::h5());
  check_exact_properties(oracle::ut4());
  // the filiform law has (x*y)_1 = x_1 + y_1 - x_4 y_2 + x_4^2 y_3 / 2, so the
  // integer points are not closed under multiplication and reduction must refuse
  check_exact_properties(oracle::filiform4(), /*integral_lattice=*/false);
  LieAlgebraQ fil = validate_algebra(oracle::filiform4());
  try {
    reduce_mod_lattice(fil, qvec({Rational(-5, 2), Rational(-2), Rational(-1), Rational(-1)}));
    FAIL("expected NotStronglyBased");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotStronglyBased);
  }
}

TEST_CASE("group law and logs agree with the unitriangular matrix oracle") {
  check_law_against_matrices(oracle::h3(), oracle::rep_h3());
  check_law_against_matrices(oracle::h5(), oracle::rep_h5());
  check_law_against_matrices(oracle::ut4(), oracle::rep_ut4());
}

TEST_CASE("abelian reduction example") {
  LieAlgebraQ alg = validate_algebra(oracle::abelian(2));
  ChartReductionQ red = reduce_mod_lattice(alg, qvec({Rational(3, 2), Rational(-1, 4)}));
  CHECK(qeq(red.gamma, qvec({Rational(1), Rational(-1)})));
  CHECK(qeq(red.g0, qvec({Rational(1, 2), Rational(3, 4)})));
}

TEST_CASE("reduction is the identity on the fundamental domain") {
  LieAlgebraQ alg = validate_algebra(oracle::ut4());
  QVector t = qvec({Rational(1, 3), Rational(0), Rational(6, 7), Rational(1, 2), Rational(9, 10),
                    Rational(2, 5)});
  ChartReductionQ red = reduce_mod_lattice(alg, t);
  CHECK(qeq(red.g0, t));
  for (long i = 0; i < red.gamma.size(); ++i) CHECK(red.gamma(i) == Rational(0));
}

TEST_CASE("numeric law agrees with the exact law") {
  LieAlgebraQ alg = validate_algebra(oracle::ut4());
  const GroupLaw<Rational>& law = group_law(alg);
  GroupLawNumeric num = compile_numeric(law);
  auto pts = sample_points(alg.dim(), 4);
  for (const QVector& x : pts)
    for (const QVector& y : pts) {
      QVector exact = law_mul(law, x, y);
      double xd[6], yd[6], out[6];
      for (int i = 0; i < 6; ++i) {
        xd[i] = x(i).to_double();
        yd[i] = y(i).to_double();
      }
      num.mul(xd, yd, out);
      for (int i = 0; i < 6; ++i) CHECK(out[i] == doctest::Approx(exact(i).to_double()).epsilon(1e-12));
    }
}
