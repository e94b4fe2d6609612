#include "nilrig/lattice.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "nilrig/bch.hpp"
#include "nilrig/errors.hpp"

namespace nilrig {

namespace {

bool integral(const QVector& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!v(i).is_integer()) return false;
  return true;
}

std::string word_str(const std::vector<int>& word, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t p = 0; p < word.size(); ++p) {
    int letter = word[p];
    int idx = letter >= 0 ? letter : ~letter;
    if (p) os << " ";
    os << "e^{" << (letter >= 0 ? "" : "-") << names[static_cast<std::size_t>(idx)] << "}";
  }
  return os.str();
}

struct ClosureWitness {
  std::vector<int> word;
  QVector coords;
};

/// Walks all generator/inverse words up to length L (skipping immediate
/// backtracks), multiplying incrementally with the exact law; returns the
/// first non-integral product, plus how many words were inspected.
std::optional<ClosureWitness> closure_scan(const LieAlgebraQ& alg, const QMatrix& gens,
                                           int word_len, long& checked) {
  const auto& law = group_law(alg);
  const int n = alg.dim();
  std::vector<QVector> letters;
  for (int i = 0; i < n; ++i) letters.push_back(gens.row(i).transpose());
  for (int i = 0; i < n; ++i) letters.push_back(law_inv(law, letters[static_cast<std::size_t>(i)]));

  struct Node {
    QVector prod;
    std::vector<int> word;  // entries: i for g_i, ~i for g_i^{-1}
  };
  std::vector<Node> frontier{{QVector::Constant(n, Rational(0)), {}}};
  checked = 0;
  for (int depth = 1; depth <= word_len; ++depth) {
    std::vector<Node> next;
    next.reserve(frontier.size() * static_cast<std::size_t>(2 * n));
    for (const auto& node : frontier) {
      for (int s = 0; s < 2 * n; ++s) {
        int letter = s < n ? s : ~(s - n);
        if (!node.word.empty()) {
          int prev = node.word.back();
          if (prev == ~letter) continue;  // g g^{-1} cancels: already covered
        }
        Node child;
        child.prod = law_mul(law, node.prod, letters[static_cast<std::size_t>(s)]);
        child.word = node.word;
        child.word.push_back(letter);
        ++checked;
        if (!integral(child.prod)) return ClosureWitness{child.word, child.prod};
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

/// The central-series rescaling X_i -> K^(1 - level_i) X_i. Structure
/// constants pick up K^(1 + level_k - level_i - level_j) with exponent >= 1,
/// so a large enough K clears all denominators.
LieAlgebraQ rescale_algebra(const LieAlgebraQ& alg, const std::vector<int>& level, int K) {
  AlgebraData d;
  d.dim = alg.dim();
  d.names = alg.names();
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j)
      for (const auto& [k, c] : alg.bracket_entries(i, j)) {
        long e = 1 + level[static_cast<std::size_t>(k)] - level[static_cast<std::size_t>(i)] -
                 level[static_cast<std::size_t>(j)];
        d.brackets.push_back({i, j, k, c * pow(Rational(K), e)});
      }
  return validate_algebra(d);
}

QAlpha lift(const Rational& r) { return QAlpha(r); }

LieAlgebra<QAlpha> lift_algebra(const LieAlgebraQ& alg) {
  return alg.map_scalar<QAlpha>([](const Rational& r) { return QAlpha(r); });
}

}  // namespace

LatticeSpec verify_lattice(const LieAlgebraQ& alg, const QMatrix& generators,
                           const LatticeOptions& opts) {
  if (generators.rows() != alg.dim() || generators.cols() != alg.dim())
    throw Error(ErrorCode::ParseError, "verify_lattice", "generator matrix must be n x n");
  auto lcs = lower_central_series(alg);

  LatticeSpec spec;
  spec.rescale_levels = lcs.level;
  spec.closure_word_len = opts.word_len;
  long checked = 0;
  auto witness = closure_scan(alg, generators, opts.word_len, checked);
  if (!witness) {
    spec.chart = alg;
    spec.generators = generators;
    spec.closure_words_checked = checked;
    return spec;
  }

  bool unit_generators = true;
  for (int i = 0; i < alg.dim() && unit_generators; ++i)
    for (int j = 0; j < alg.dim() && unit_generators; ++j)
      if (generators(i, j) != (i == j ? Rational(1) : Rational(0))) unit_generators = false;

  if (!unit_generators) {
    std::ostringstream msg;
    msg << "generator word " << word_str(witness->word, alg.names())
        << " has non-integer coordinates (";
    for (int i = 0; i < witness->coords.size(); ++i)
      msg << (i ? ", " : "") << witness->coords(i);
    msg << ")";
    throw Error(ErrorCode::ClosureFailure, "verify_lattice", msg.str());
  }

  for (int K = 2; K <= opts.rescale_bound; ++K) {
    LieAlgebraQ rescaled = rescale_algebra(alg, lcs.level, K);
    long rechecked = 0;
    if (!closure_scan(rescaled, generators, opts.word_len, rechecked)) {
      spec.chart = rescaled;
      spec.generators = generators;
      spec.rescale_factor = K;
      spec.closure_words_checked = rechecked;
      return spec;
    }
  }
  std::ostringstream msg;
  msg << "no integer rescale K <= " << opts.rescale_bound
      << " closes the lattice; first witness: " << word_str(witness->word, alg.names());
  throw Error(ErrorCode::RescaleBoundExceeded, "verify_lattice", msg.str());
}

std::optional<std::pair<int, int>> verify_graded_automorphism(const LieAlgebraQ& alg,
                                                              const std::vector<int>& degrees,
                                                              const QAlpha& alpha) {
  const int n = alg.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // [φX_i, φX_j] = α^(d_i + d_j) Σ c_k X_k must equal Σ c_k α^(d_k) X_k.
      QAlpha lhs_scale = alpha.pow(degrees[static_cast<std::size_t>(i)] +
                                   degrees[static_cast<std::size_t>(j)]);
      for (const auto& [k, c] : alg.bracket_entries(i, j)) {
        if (c.is_zero()) continue;
        QAlpha rhs_scale = alpha.pow(degrees[static_cast<std::size_t>(k)]);
        if (!(lhs_scale == rhs_scale)) return std::make_pair(i, j);
      }
    }
  return std::nullopt;
}

LatticePair build_diophantine_pair(const LieAlgebraQ& alg, const std::vector<int>& degrees,
                                   const UPoly& min_poly, const QInterval& isolating,
                                   const CertOptions& cert_opts,
                                   const LatticeOptions& lattice_opts) {
  const int n = alg.dim();
  if (static_cast<int>(degrees.size()) != n)
    throw Error(ErrorCode::ParseError, "build_diophantine_pair", "grading size != dim");
  int k_top = 0;
  for (int i = 0; i < n; ++i) {
    if (degrees[static_cast<std::size_t>(i)] < 1)
      throw Error(ErrorCode::GradingViolation, "build_diophantine_pair",
                  "grading degrees must be positive integers");
    k_top = std::max(k_top, degrees[static_cast<std::size_t>(i)]);
  }
  // [V_i, V_j] ⊆ V_{i+j}: every bracket component must land at the summed degree.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (const auto& [k, c] : alg.bracket_entries(i, j)) {
        if (c.is_zero()) continue;
        int want = degrees[static_cast<std::size_t>(i)] + degrees[static_cast<std::size_t>(j)];
        if (degrees[static_cast<std::size_t>(k)] != want) {
          std::ostringstream msg;
          msg << "[" << alg.names()[static_cast<std::size_t>(i)] << ","
              << alg.names()[static_cast<std::size_t>(j)] << "] has a "
              << alg.names()[static_cast<std::size_t>(k)] << " component of degree "
              << degrees[static_cast<std::size_t>(k)] << ", expected " << want;
          throw Error(ErrorCode::GradingViolation, "build_diophantine_pair", msg.str());
        }
      }
  if (min_poly.degree() <= k_top) {
    std::ostringstream msg;
    msg << "min_poly degree " << min_poly.degree() << " <= top grading degree " << k_top
        << ": alpha^" << min_poly.degree() << " would be rational";
    throw Error(ErrorCode::DegreeMismatch, "build_diophantine_pair", msg.str());
  }

  LatticePair pair;
  pair.field = NumberField::create(min_poly, isolating);
  pair.gamma = verify_lattice(alg, QMatrix::Identity(n, n), lattice_opts);
  pair.algebra = pair.gamma.chart;
  pair.degrees = degrees;

  QAlpha alpha = QAlpha::alpha(pair.field);
  if (auto bad = verify_graded_automorphism(pair.algebra, degrees, alpha)) {
    std::ostringstream msg;
    msg << "scaling map is not an automorphism at pair (" << bad->first + 1 << ", "
        << bad->second + 1 << ")";
    throw Error(ErrorCode::GradingViolation, "build_diophantine_pair", msg.str());
  }

  pair.a = MatrixOf<QAlpha>::Constant(n, n, QAlpha(0));
  for (int i = 0; i < n; ++i) pair.a(i, i) = alpha.pow(degrees[static_cast<std::size_t>(i)]);

  std::map<int, DiophantineCertificate> by_degree;
  for (int i = 0; i < n; ++i) {
    int d = degrees[static_cast<std::size_t>(i)];
    auto it = by_degree.find(d);
    if (it == by_degree.end()) {
      auto nf = as_algebraic_number(alpha.pow(d));
      it = by_degree.emplace(d, diophantine_certificate(nf, cert_opts)).first;
    }
    pair.diagonal_certs.push_back(it->second);
  }
  return pair;
}

MatrixOf<QAlpha> triangular_relation_check(const MatrixOf<QAlpha>& log_gamma,
                                           const MatrixOf<QAlpha>& log_lambda) {
  const int n = static_cast<int>(log_gamma.rows());
  if (log_lambda.rows() != n || log_gamma.cols() != n || log_lambda.cols() != n)
    throw Error(ErrorCode::ParseError, "triangular_relation_check",
                "generator-log matrices must be n x n");
  MatrixOf<QAlpha> lt = log_gamma.transpose();
  MatrixOf<QAlpha> a = MatrixOf<QAlpha>::Constant(n, n, QAlpha(0));
  for (int i = 0; i < n; ++i) {
    VectorOf<QAlpha> rhs = log_lambda.row(i).transpose();
    auto sol = solve_linear<QAlpha>(lt, rhs);
    if (!sol)
      throw Error(ErrorCode::NotTriangular, "triangular_relation_check",
                  "first generator-log matrix is singular");
    a.row(i) = sol->transpose();
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!a(i, j).is_zero()) {
        std::ostringstream msg;
        msg << "relation table is not lower-triangular: entry (" << i + 1 << ", " << j + 1
            << ") = " << a(i, j).str() << " is nonzero";
        throw Error(ErrorCode::NotTriangular, "triangular_relation_check", msg.str());
      }
  return a;
}

MatrixOf<QAlpha> triangular_relation_check(const LatticePair& pair) {
  const int n = pair.algebra.dim();
  LieAlgebra<QAlpha> lifted = lift_algebra(pair.algebra);
  MatrixOf<QAlpha> log_gamma(n, n), log_lambda(n, n);
  for (int i = 0; i < n; ++i) {
    VectorOf<QAlpha> gi = VectorOf<QAlpha>::Constant(n, QAlpha(0));
    for (int j = 0; j < n; ++j) gi(j) = lift(pair.gamma.generators(i, j));
    log_gamma.row(i) = log_from_coords(lifted, gi).transpose();
    VectorOf<QAlpha> li = VectorOf<QAlpha>::Constant(n, QAlpha(0));
    li(i) = pair.a(i, i);  // e^{Y_i} has the single chart coordinate a_ii
    log_lambda.row(i) = log_from_coords(lifted, li).transpose();
  }
  return triangular_relation_check(log_gamma, log_lambda);
}

LatticePair quotient_pair(const LatticePair& pair) {
  const int n = pair.algebra.dim();
  if (n <= 1)
    throw Error(ErrorCode::ParseError, "quotient_pair", "cannot quotient a 1-dimensional pair");
  LatticePair q;
  q.algebra = quotient_algebra(pair.algebra);
  LatticeOptions opts;
  q.gamma = verify_lattice(q.algebra, QMatrix::Identity(n - 1, n - 1), opts);
  q.algebra = q.gamma.chart;
  q.degrees.assign(pair.degrees.begin() + 1, pair.degrees.end());
  q.field = pair.field;
  q.a = pair.a.block(1, 1, n - 1, n - 1);
  q.diagonal_certs.assign(pair.diagonal_certs.begin() + 1, pair.diagonal_certs.end());
  return q;
}

ChartReductionQ reduce_mod_lattice(const LieAlgebraQ& alg, const QVector& t) {
  auto red = reduce_in_chart(group_law(alg), t);
  if (!integral(red.gamma)) {
    std::ostringstream msg;
    msg << "reduction produced a non-integral lattice word at (";
    for (int i = 0; i < red.gamma.size(); ++i) msg << (i ? ", " : "") << red.gamma(i);
    msg << "); the basis is not strongly based on the integer lattice";
    throw Error(ErrorCode::NotStronglyBased, "reduce_mod_lattice", msg.str());
  }
  return red;
}

std::vector<RelationWord> relation_words(const LatticeSpec& lattice) {
  const auto& law = group_law(lattice.chart);
  const int n = lattice.chart.dim();
  std::vector<RelationWord> words;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QVector gi = lattice.generators.row(i).transpose();
      QVector gj = lattice.generators.row(j).transpose();
      QVector comm = law_mul(law, law_mul(law, law_mul(law, gi, gj), law_inv(law, gi)),
                             law_inv(law, gj));
      RelationWord w;
      w.i = i;
      w.j = j;
      for (int k = 0; k < n; ++k) {
        if (!comm(k).is_integer())
          throw Error(ErrorCode::NotStronglyBased, "relation_words",
                      "commutator normal form is not integral");
        w.m.push_back(comm(k).num());
      }
      words.push_back(std::move(w));
    }
  return words;
}

}  // namespace nilrig
