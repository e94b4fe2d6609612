#include "nilrig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilrig/errors.hpp"
#include "nilrig/group_law.hpp"
#include "nilrig/parallel.hpp"
#include "nilrig/rotation_solver.hpp"

namespace nilrig {
namespace {

std::vector<long> strides_of(const GridShape& shape) {
  std::vector<long> s(static_cast<std::size_t>(shape.rank()), 1);
  for (int d = 1; d < shape.rank(); ++d)
    s[static_cast<std::size_t>(d)] = s[static_cast<std::size_t>(d - 1)] * shape.dims[static_cast<std::size_t>(d - 1)];
  return s;
}

/// Periodic Catmull-Rom evaluation of a sampled line at the uniformly shifted
/// positions (i + delta·m)/m.
void cubic_shift(std::vector<double>& line, double delta) {
  const long m = static_cast<long>(line.size());
  double q = delta * static_cast<double>(m);
  double jf = std::floor(q);
  double u = q - jf;
  long j0 = static_cast<long>(jf);
  double wm1 = 0.5 * (-u + 2 * u * u - u * u * u);
  double w0 = 0.5 * (2 - 5 * u * u + 3 * u * u * u);
  double w1 = 0.5 * (u + 4 * u * u - 3 * u * u * u);
  double w2 = 0.5 * (-u * u + u * u * u);
  auto wrap = [m](long i) { return ((i % m) + m) % m; };
  std::vector<double> out(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    long p = i + j0;
    out[static_cast<std::size_t>(i)] =
        wm1 * line[static_cast<std::size_t>(wrap(p - 1))] + w0 * line[static_cast<std::size_t>(wrap(p))] +
        w1 * line[static_cast<std::size_t>(wrap(p + 1))] + w2 * line[static_cast<std::size_t>(wrap(p + 2))];
  }
  line.swap(out);
}

std::string error_message(const Error& e) {
  std::string w = e.what();
  auto p = w.find("]: ");
  return p == std::string::npos ? w : w.substr(p + 3);
}

std::string point_str(const std::vector<int>& idx) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? ", " : "") << idx[i];
  os << ")";
  return os.str();
}

double fiber_deviation(const FunctionGrid& g, const FunctionGrid& means, long* worst_base = nullptr) {
  const long m1 = g.shape.fiber_len();
  double worst = 0.0;
  for (long b = 0; b < g.shape.base_size(); ++b)
    for (long i = 0; i < m1; ++i) {
      double d = std::abs(g[b * m1 + i] - means[b]);
      if (d > worst) {
        worst = d;
        if (worst_base) *worst_base = b;
      }
    }
  return worst;
}

}  // namespace

Cocycle& Cocycle::operator+=(const Cocycle& o) {
  if (shape != o.shape || grids.size() != o.grids.size())
    throw Error(ErrorCode::GridMismatch, "cocycle_add", "incompatible cocycle grids");
  for (std::size_t j = 0; j < grids.size(); ++j) grids[j] += o.grids[j];
  return *this;
}

Eigen::VectorXd generator_coords(const LatticePair& pair, int j) {
  const int n = pair.algebra.dim();
  if (j < 0 || j >= n)
    throw Error(ErrorCode::GridMismatch, "generator_coords", "generator index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(j) = pair.a(j, j).to_double();  // exp(Y_j) has the single chart coordinate a_jj
  return v;
}

namespace {

/// Samples F(reduce(image(t))) over the grid of f, where F is the periodic
/// interpolant of the samples of f and image is any map of the triangular
/// form u_i = t_i + Δ_i(t_{i+1..n}). The sweep runs from the top coordinate
/// down: the reduced offset of coordinate d is constant along every line in
/// coordinates <= d, so each step is a 1-D periodic shift with a per-line
/// offset read off one chart reduction.
FunctionGrid sweep_eval(const FunctionGrid& f, const GroupLawNumeric& num, InterpKind kind,
                        const std::function<void(const double*, double*)>& image) {
  const GridShape& shape = f.shape;
  const int n = shape.rank();
  const std::vector<long> stride = strides_of(shape);
  FunctionGrid out = f;
  std::vector<double> t(static_cast<std::size_t>(n)), u(static_cast<std::size_t>(n)),
      g0(static_cast<std::size_t>(n));
  std::vector<long> powers(static_cast<std::size_t>(n));

  for (int d = n - 1; d >= 0; --d) {
    const long m = shape.dims[static_cast<std::size_t>(d)];
    long outer_count = 1;
    for (int e = d + 1; e < n; ++e) outer_count *= shape.dims[static_cast<std::size_t>(e)];
    const long inner = stride[static_cast<std::size_t>(d)];
    std::vector<double> line(static_cast<std::size_t>(m));
    for (long oc = 0; oc < outer_count; ++oc) {
      long rem = oc, outer_base = 0;
      std::fill(t.begin(), t.end(), 0.0);
      for (int e = d + 1; e < n; ++e) {
        long ie = rem % shape.dims[static_cast<std::size_t>(e)];
        rem /= shape.dims[static_cast<std::size_t>(e)];
        t[static_cast<std::size_t>(e)] = static_cast<double>(ie) / shape.dims[static_cast<std::size_t>(e)];
        outer_base += ie * stride[static_cast<std::size_t>(e)];
      }
      image(t.data(), u.data());
      reduce_in_chart_fast(num, u.data(), g0.data(), powers.data());
      double delta = g0[static_cast<std::size_t>(d)];
      if (delta == 0.0 || m == 1) continue;
      for (long ic = 0; ic < inner; ++ic) {
        const long base = outer_base + ic;
        for (long i = 0; i < m; ++i) line[static_cast<std::size_t>(i)] = out[base + i * inner];
        if (kind == InterpKind::Spectral || d == 0)
          line = rotate_samples(line, delta);
        else
          cubic_shift(line, delta);
        for (long i = 0; i < m; ++i) out[base + i * inner] = line[static_cast<std::size_t>(i)];
      }
    }
  }
  return out;
}

}  // namespace

FunctionGrid translate_grid(const FunctionGrid& f, const LieAlgebraQ& alg,
                            const Eigen::VectorXd& coords, Side side, InterpKind kind) {
  const int n = f.shape.rank();
  if (n == 0 || alg.dim() != n || coords.size() != n)
    throw Error(ErrorCode::GridMismatch, "translate_grid",
                "grid rank, algebra dimension and translation coordinates disagree");
  const GroupLawNumeric num = compile_numeric(group_law(alg));
  std::vector<double> s(coords.data(), coords.data() + n);
  auto image = [&](const double* t, double* u) {
    if (side == Side::Right)
      num.mul(t, s.data(), u);
    else
      num.mul(s.data(), t, u);
  };
  return sweep_eval(f, num, kind, image);
}

FunctionGrid sample_grid(const GridShape& shape,
                         const std::function<double(const std::vector<double>&)>& f) {
  FunctionGrid g(shape);
  for (long i = 0; i < shape.size(); ++i) g[i] = f(shape.point(i));
  return g;
}

Cocycle make_hom_cocycle(const LatticePair& pair, const GridShape& shape,
                         const std::vector<double>& values) {
  const int n = pair.algebra.dim();
  if (static_cast<int>(values.size()) != n || shape.rank() != n)
    throw Error(ErrorCode::GridMismatch, "make_hom_cocycle",
                "need one homomorphism value per generator and a full-rank grid");
  Cocycle c(shape, n);
  for (int j = 0; j < n; ++j)
    std::fill(c.grids[static_cast<std::size_t>(j)].values.begin(),
              c.grids[static_cast<std::size_t>(j)].values.end(), values[static_cast<std::size_t>(j)]);
  return c;
}

Cocycle make_coboundary(const LatticePair& pair, const GridShape& shape,
                        const std::function<double(const std::vector<double>&)>& transfer) {
  const int n = pair.algebra.dim();
  if (shape.rank() != n)
    throw Error(ErrorCode::GridMismatch, "make_coboundary", "grid rank must match the pair dimension");
  const GroupLawNumeric num = compile_numeric(group_law(pair.algebra));
  Cocycle c(shape, n);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd sj = generator_coords(pair, j);
    std::vector<double> s(sj.data(), sj.data() + n);
    FunctionGrid& gj = c.grids[static_cast<std::size_t>(j)];
    for (long i = 0; i < shape.size(); ++i) {
      std::vector<double> t = shape.point(i);
      num.mul(t.data(), s.data(), u.data());
      gj[i] = transfer(u) - transfer(t);
    }
  }
  return c;
}

AveragedCocycle average_cocycle(const Cocycle& c) {
  AveragedCocycle out;
  out.centered = c;
  out.c0.reserve(c.grids.size());
  for (auto& g : out.centered.grids) {
    double m = g.mean();
    out.c0.push_back(m);
    g.subtract(m);
  }
  return out;
}

FunctionGrid fiber_mean_check(const FunctionGrid& centered_central, double tol) {
  FunctionGrid means = centered_central.fiber_means();
  double worst = 0.0;
  long at = 0;
  for (long b = 0; b < means.shape.size(); ++b)
    if (std::abs(means[b]) > worst) {
      worst = std::abs(means[b]);
      at = b;
    }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "fiber mean of the centered central-generator grid is " << means[at]
        << " at base point z=" << point_str(means.shape.unindex(at)) << " (tolerance " << tol
        << "); input is not a centered cocycle or the resolution is insufficient";
    throw Error(ErrorCode::FiberMeanNonzero, "fiber_mean_check", msg.str());
  }
  return means;
}

FiberTransfer fiberwise_transfer(const FunctionGrid& centered_central, double a,
                                 const DiophantineCertificate* cert, const SolveOptions& opts) {
  const GridShape& shape = centered_central.shape;
  const long m1 = shape.fiber_len();
  const long nb = shape.base_size();
  if (m1 < 4)
    throw Error(ErrorCode::GridMismatch, "fiberwise_transfer", "fiber resolution too small");

  FiberTransfer ft;
  ft.h = FunctionGrid(shape);
  ft.line_means = FunctionGrid(shape.base());

  RotationSolveOptions ropts;
  ropts.K = std::max<long>(1, std::min<long>(opts.K, m1 / 2));
  ropts.tol = opts.tol;
  ropts.divisor_floor = opts.divisor_floor;

  struct LineDiag {
    double divisor_min = 2.0, floor = 0.0, tail = 0.0, decay = std::numeric_limits<double>::infinity();
    long K_eff = 0;
  };
  std::vector<LineDiag> diag(static_cast<std::size_t>(nb));

  parallel_for(0, nb, opts.threads, [&](long b) {
    std::vector<double> line(centered_central.values.begin() + b * m1,
                             centered_central.values.begin() + (b + 1) * m1);
    try {
      RotationSolveResult rs = solve_rotation_coboundary(line, a, cert, ropts);
      std::copy(rs.h.begin(), rs.h.end(), ft.h.values.begin() + b * m1);
      ft.line_means[b] = rs.c0;
      diag[static_cast<std::size_t>(b)] = {rs.divisor_min, rs.divisor_floor, rs.tail_mass, rs.decay_m, rs.K_eff};
    } catch (const Error& e) {
      throw Error(e.code(), e.stage(),
                  error_message(e) + " at base point z=" + point_str(shape.base().unindex(b)));
    }
  });

  for (const auto& d : diag) {
    ft.divisor_min = std::min(ft.divisor_min, d.divisor_min);
    ft.divisor_floor = std::max(ft.divisor_floor, d.floor);
    ft.tail_mass = std::max(ft.tail_mass, d.tail);
    ft.decay_m = std::min(ft.decay_m, d.decay);
    ft.K_eff = std::max(ft.K_eff, d.K_eff);
  }

  // Continuity sanity check: h should vary smoothly across the base grid
  // (per-line constants are pinned by the fiber-mean-zero normalization).
  const std::vector<long> stride = strides_of(shape);
  for (int d = 1; d < shape.rank(); ++d) {
    const long m = shape.dims[static_cast<std::size_t>(d)];
    if (m < 2) continue;
    for (long i = 0; i < shape.size(); ++i) {
      long id = (i / stride[static_cast<std::size_t>(d)]) % m;
      long nbr = id + 1 < m ? i + stride[static_cast<std::size_t>(d)]
                            : i - (m - 1) * stride[static_cast<std::size_t>(d)];
      ft.base_jump = std::max(ft.base_jump, std::abs(ft.h[i] - ft.h[nbr]));
    }
  }
  return ft;
}

Cocycle apply_transfer(const LatticePair& pair, const Cocycle& centered, const FunctionGrid& h,
                       InterpKind kind) {
  if (h.shape != centered.shape)
    throw Error(ErrorCode::GridMismatch, "apply_transfer", "transfer grid shape mismatch");
  Cocycle out = centered;
  for (std::size_t j = 0; j < out.grids.size(); ++j) {
    FunctionGrid moved =
        translate_grid(h, pair.algebra, generator_coords(pair, static_cast<int>(j)), Side::Right, kind);
    out.grids[j] += h;
    out.grids[j] -= moved;
  }
  return out;
}

Cocycle descend_cocycle(const Cocycle& corrected, double tol, double* fiber_residual) {
  const int g = static_cast<int>(corrected.grids.size());
  if (g < 2 || corrected.shape.rank() < 2)
    throw Error(ErrorCode::GridMismatch, "descend_cocycle",
                "descent needs at least two generators and two coordinates");
  double worst = corrected.grids[0].sup_norm();  // retired generator must be annihilated
  int worst_gen = 0;
  Cocycle out;
  out.shape = corrected.shape.base();
  out.grids.reserve(static_cast<std::size_t>(g - 1));
  for (int j = 1; j < g; ++j) {
    FunctionGrid means = corrected.grids[static_cast<std::size_t>(j)].fiber_means();
    double dev = fiber_deviation(corrected.grids[static_cast<std::size_t>(j)], means);
    if (dev > worst) {
      worst = dev;
      worst_gen = j;
    }
    out.grids.push_back(std::move(means));
  }
  if (fiber_residual) *fiber_residual = worst;
  if (worst > tol) {
    std::ostringstream msg;
    if (worst_gen == 0)
      msg << "corrected grid of the retired central generator has sup norm " << worst;
    else
      msg << "corrected grid for generator exp(Y_" << worst_gen + 1
          << ") deviates from its fiber means by " << worst;
    msg << " (tolerance " << tol << "); the cocycle does not descend at this resolution";
    throw Error(ErrorCode::NotFiberConstant, "descend_cocycle", msg.str());
  }
  return out;
}

namespace {

/// c(x, w) accumulated along a word of generator letters via the cocycle
/// identity c(x, gh) = c(x, g) + c(x·g, h); sign −1 means the inverse letter.
FunctionGrid word_value(const LatticePair& pair, const Cocycle& c,
                        const std::vector<std::pair<int, int>>& letters, InterpKind kind) {
  const int n = pair.algebra.dim();
  const GroupLawNumeric num = compile_numeric(group_law(pair.algebra));
  FunctionGrid acc(c.shape);
  std::vector<double> u(static_cast<std::size_t>(n), 0.0), u2(static_cast<std::size_t>(n));
  for (auto [gen, sign] : letters) {
    Eigen::VectorXd sj = generator_coords(pair, gen);
    std::vector<double> s(sj.data(), sj.data() + n);
    if (sign > 0) {
      Eigen::VectorXd uv = Eigen::Map<Eigen::VectorXd>(u.data(), n);
      acc += translate_grid(c.grids[static_cast<std::size_t>(gen)], pair.algebra, uv, Side::Right, kind);
      num.mul(u.data(), s.data(), u2.data());
      u.swap(u2);
    } else {
      for (auto& v : s) v = -v;  // exp(Y_g)^{-1} has the single chart coordinate −a_gg
      num.mul(u.data(), s.data(), u2.data());
      u.swap(u2);
      Eigen::VectorXd uv = Eigen::Map<Eigen::VectorXd>(u.data(), n);
      acc -= translate_grid(c.grids[static_cast<std::size_t>(gen)], pair.algebra, uv, Side::Right, kind);
    }
  }
  return acc;
}

}  // namespace

double verify_cocycle_identity(const LatticePair& pair, const Cocycle& c, InterpKind kind) {
  const int n = pair.algebra.dim();
  if (static_cast<int>(c.grids.size()) != n || c.shape.rank() != n)
    throw Error(ErrorCode::GridMismatch, "verify_cocycle_identity",
                "cocycle must carry one grid per generator on a full-rank grid");
  for (const auto& g : c.grids)
    if (g.shape != c.shape)
      throw Error(ErrorCode::GridMismatch, "verify_cocycle_identity", "generator grid shape mismatch");
  double defect = 0.0;
  for (const RelationWord& rel : relation_words(pair.gamma)) {
    std::vector<std::pair<int, int>> lhs = {{rel.i, 1}, {rel.j, 1}, {rel.i, -1}, {rel.j, -1}};
    std::vector<std::pair<int, int>> rhs;
    for (int k = 0; k < n; ++k) {
      long mk = static_cast<long>(rel.m[static_cast<std::size_t>(k)].get_si());
      for (long r = 0; r < std::labs(mk); ++r) rhs.push_back({k, mk > 0 ? 1 : -1});
    }
    defect = std::max(defect, sup_diff(word_value(pair, c, lhs, kind), word_value(pair, c, rhs, kind)));
  }
  return defect;
}

FunctionGrid cocycle_power(const LatticePair& pair, const Cocycle& c, int gen, long m,
                           InterpKind kind) {
  std::vector<std::pair<int, int>> letters(static_cast<std::size_t>(std::labs(m)),
                                           {gen, m >= 0 ? 1 : -1});
  return word_value(pair, c, letters, kind);
}

double invariance_check(const LieAlgebraQ& alg, const FunctionGrid& f, InterpKind kind) {
  const GridShape& shape = f.shape;
  const int n = alg.dim();
  if (shape.rank() != n)
    throw Error(ErrorCode::GridMismatch, "invariance_check", "grid rank must match the algebra dimension");
  const GroupLawNumeric num = compile_numeric(group_law(alg));
  const std::vector<long> stride = strides_of(shape);
  auto d4 = [](double a, double b, double c, double d, double e) {
    return std::abs(a - 4 * b + 6 * c - 4 * d + e);
  };
  double defect = 0.0;
  // Coordinate 1 is omitted: adding a period to it is exactly multiplication
  // by a lattice element, so its re-entry line is the plain wrap for any data.
  for (int d = 1; d < n; ++d) {
    const long m = shape.dims[static_cast<std::size_t>(d)];
    if (m < 8) continue;
    // Line continuation across the t_d = 1 seam: reduce(t + e_d) lands on the
    // twisted re-entry line of the quotient, evaluated through the grid's
    // periodic interpolant.
    auto image = [&, d](const double* t, double* u) {
      std::copy(t, t + n, u);
      u[d] += 1.0;
    };
    FunctionGrid cont = sweep_eval(f, num, kind, image);
    const long sd = stride[static_cast<std::size_t>(d)];
    long outer_count = 1;
    for (int e = d + 1; e < n; ++e) outer_count *= shape.dims[static_cast<std::size_t>(e)];
    long outer_step = sd * m;
    for (long oc = 0; oc < outer_count; ++oc)
      for (long ic = 0; ic < sd; ++ic) {
        const long base = oc * outer_step + ic;
        auto q = [&](long i) { return f[base + ((i % m + m) % m) * sd]; };
        auto r = [&](long i) { return cont[base + i * sd]; };
        // roughness of the plain periodic wrap of this line
        double wrap = 0.0;
        for (long j = 0; j < m; ++j)
          wrap = std::max(wrap, d4(q(j - 2), q(j - 1), q(j), q(j + 1), q(j + 2)));
        // roughness across the junction onto the honest continuation
        double junc = std::max({d4(q(m - 4), q(m - 3), q(m - 2), q(m - 1), r(0)),
                                d4(q(m - 3), q(m - 2), q(m - 1), r(0), r(1)),
                                d4(q(m - 2), q(m - 1), r(0), r(1), r(2))});
        defect = std::max(defect, junc - wrap);
      }
  }
  return std::max(defect, 0.0);
}

double flatness_check(const LieAlgebraQ& alg, const Eigen::MatrixXd& omega) {
  const int n = alg.dim();
  if (omega.rows() != n || omega.cols() != n)
    throw Error(ErrorCode::GridMismatch, "flatness_check", "map must be square of the algebra dimension");
  auto bracket = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double coef = x(p) * y(q) - x(q) * y(p);
        if (coef == 0.0) continue;
        for (const auto& [k, cv] : alg.bracket_entries(p, q)) w(k) += coef * cv.to_double();
      }
    return w;
  };
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXd ei = Eigen::VectorXd::Unit(n, i), ej = Eigen::VectorXd::Unit(n, j);
      Eigen::VectorXd lhs = omega * bracket(ei, ej);
      Eigen::VectorXd rhs = bracket(omega.col(i), omega.col(j));
      defect = std::max(defect, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return defect;
}

namespace {

ReductionResult reduce_impl(const LatticePair& pair, const Cocycle& c, const SolveOptions& opts,
                            int level) {
  const int n = pair.algebra.dim();
  try {
    if (static_cast<int>(c.grids.size()) != n || c.shape.rank() != n)
      throw Error(ErrorCode::GridMismatch, "reduce_cocycle",
                  "cocycle must carry one grid per generator on a full-rank grid");
    for (const auto& g : c.grids)
      if (g.shape != c.shape)
        throw Error(ErrorCode::GridMismatch, "reduce_cocycle", "generator grid shape mismatch");

    const double fc_tol = opts.fiber_tol > 0 ? opts.fiber_tol : opts.tol;
    const double a = pair.a(0, 0).to_double();
    const DiophantineCertificate* cert =
        pair.diagonal_certs.empty() ? nullptr : &pair.diagonal_certs[0];

    ReductionResult res;
    if (n == 1) {
      const long m = c.shape.fiber_len();
      AveragedCocycle avg = average_cocycle(c);
      RotationSolveOptions ropts;
      ropts.K = std::max<long>(1, std::min<long>(opts.K, m / 2));
      ropts.tol = opts.tol;
      ropts.divisor_floor = opts.divisor_floor;
      RotationSolveResult rs =
          solve_rotation_coboundary(avg.centered.grids[0].values, a, cert, ropts);
      res.c0 = {avg.c0[0] + rs.c0};
      res.transfer = FunctionGrid(c.shape, rs.h);
      res.residual = rs.residual_sup;
      LevelReport rep;
      rep.level = level;
      rep.fiber_len = m;
      rep.K_eff = rs.K_eff;
      rep.a = a;
      rep.divisor_min = rs.divisor_min;
      rep.divisor_floor = rs.divisor_floor;
      rep.tail_mass = rs.tail_mass;
      rep.decay_m = rs.decay_m;
      rep.c0_central = res.c0[0];
      rep.h = res.transfer;
      res.levels = {rep};
      return res;
    }

    AveragedCocycle avg = average_cocycle(c);
    fiber_mean_check(avg.centered.grids[0], fc_tol);
    FiberTransfer ft = fiberwise_transfer(avg.centered.grids[0], a, cert, opts);
    Cocycle corrected = apply_transfer(pair, avg.centered, ft.h, opts.interp);
    double fiber_residual = 0.0;
    Cocycle reduced = descend_cocycle(corrected, fc_tol, &fiber_residual);

    ReductionResult sub = reduce_impl(quotient_pair(pair), reduced, opts, level + 1);

    res.c0 = avg.c0;
    for (int j = 1; j < n; ++j) res.c0[static_cast<std::size_t>(j)] += sub.c0[static_cast<std::size_t>(j - 1)];

    const long m1 = c.shape.fiber_len();
    res.transfer = ft.h;
    for (long b = 0; b < c.shape.base_size(); ++b)
      for (long i = 0; i < m1; ++i) res.transfer[b * m1 + i] += sub.transfer[b];
    res.transfer.subtract(res.transfer.mean());

    LevelReport rep;
    rep.level = level;
    rep.fiber_len = m1;
    rep.K_eff = ft.K_eff;
    rep.a = a;
    rep.divisor_min = ft.divisor_min;
    rep.divisor_floor = ft.divisor_floor;
    rep.tail_mass = ft.tail_mass;
    rep.decay_m = ft.decay_m;
    rep.fiber_residual = fiber_residual;
    rep.base_jump = ft.base_jump;
    rep.c0_central = avg.c0[0];
    rep.h = ft.h;
    res.levels.push_back(rep);
    res.levels.insert(res.levels.end(), sub.levels.begin(), sub.levels.end());

    for (int j = 0; j < n; ++j) {
      FunctionGrid moved =
          translate_grid(res.transfer, pair.algebra, generator_coords(pair, j), Side::Right, opts.interp);
      double worst = 0.0;
      const FunctionGrid& cj = c.grids[static_cast<std::size_t>(j)];
      for (long i = 0; i < c.shape.size(); ++i)
        worst = std::max(worst,
                         std::abs(cj[i] - res.c0[static_cast<std::size_t>(j)] + res.transfer[i] - moved[i]));
      res.residual = std::max(res.residual, worst);
    }

    res.hom_defect = sub.hom_defect;
    for (const RelationWord& rel : relation_words(pair.gamma)) {
      double v = 0.0;
      for (int k = 0; k < n; ++k)
        v += rel.m[static_cast<std::size_t>(k)].get_d() * res.c0[static_cast<std::size_t>(k)];
      res.hom_defect = std::max(res.hom_defect, std::abs(v));
    }
    return res;
  } catch (const Error& e) {
    std::string msg = error_message(e);
    if (msg.find("(recursion level ") != std::string::npos) throw;
    std::ostringstream tagged;
    tagged << msg << " (recursion level " << level << ", fiber of coordinate t_" << level << ")";
    throw Error(e.code(), e.stage(), tagged.str());
  }
}

}  // namespace

ReductionResult reduce_cocycle(const LatticePair& pair, const Cocycle& c, const SolveOptions& opts) {
  return reduce_impl(pair, c, opts, 1);
}

}  // namespace nilrig
