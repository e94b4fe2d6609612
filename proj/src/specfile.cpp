#include "nilrig/specfile.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nilrig/errors.hpp"
#include "nilrig/transfers.hpp"

namespace nilrig {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;  // 1-based byte offset in the line
};

[[noreturn]] void fail(const std::string& file, int line, int col, const std::string& msg) {
  std::ostringstream os;
  os << file << ":" << line << ":" << col << ": " << msg;
  throw Error(ErrorCode::ParseError, "specfile", os.str());
}

[[noreturn]] void fail(const std::string& file, const Token& t, const std::string& msg) {
  fail(file, t.line, t.col, msg);
}

/// Splits into lines of tokens; '#' starts a comment, blank lines dropped.
std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<Token> toks;
    size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
      size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      toks.push_back({line.substr(i, j - i), lineno, static_cast<int>(i) + 1});
      i = j;
    }
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "specfile", "cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string dir_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash + 1);
}

long parse_long(const std::string& file, const Token& t) {
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(t.text.c_str(), &end, 10);
  if (errno != 0 || end == t.text.c_str() || *end != '\0')
    fail(file, t, "expected an integer, got '" + t.text + "'");
  return v;
}

double parse_dbl(const std::string& file, const Token& t) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(t.text.c_str(), &end);
  if (errno != 0 || end == t.text.c_str() || *end != '\0')
    fail(file, t, "expected a number, got '" + t.text + "'");
  return v;
}

Rational parse_rat(const std::string& file, const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const std::exception&) {
    fail(file, t, "expected a rational (p/q, integer, or exact decimal), got '" + t.text + "'");
  }
}

/// Parses "c", "x", "c*x^k", "x^k", "c x^k" terms joined by +/-.
UPoly parse_poly_expr(const std::string& file, int line, int col, const std::string& expr) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(file, line, col, "empty polynomial expression");

  std::vector<Rational> coeffs;
  auto add = [&](int deg, const Rational& c) {
    if (deg >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<size_t>(deg) + 1, Rational(0));
    coeffs[static_cast<size_t>(deg)] = coeffs[static_cast<size_t>(deg)] + c;
  };

  size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail(file, line, col, "expected '+' or '-' before '" + s.substr(i) + "'");
    }
    first = false;
    if (i >= s.size()) fail(file, line, col, "dangling sign in polynomial");

    Rational c(1);
    bool have_coeff = false;
    if (s[i] != 'x') {
      size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/' || s[j] == '.')) ++j;
      if (j == i) fail(file, line, col, "unexpected character '" + std::string(1, s[i]) + "' in polynomial");
      try {
        c = Rational::parse(s.substr(i, j - i));
      } catch (const std::exception&) {
        fail(file, line, col, "bad coefficient '" + s.substr(i, j - i) + "' in polynomial");
      }
      have_coeff = true;
      i = j;
      if (i < s.size() && s[i] == '*') ++i;
    }
    int deg = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) fail(file, line, col, "missing exponent after '^'");
        deg = static_cast<int>(std::strtol(s.substr(i, j - i).c_str(), nullptr, 10));
        i = j;
      }
    } else if (!have_coeff) {
      fail(file, line, col, "expected a term in polynomial");
    }
    add(deg, sign < 0 ? -c : c);
  }
  return UPoly(std::move(coeffs));
}

bool all_numeric(const std::vector<Token>& toks, size_t from) {
  for (size_t i = from; i < toks.size(); ++i) {
    const std::string& t = toks[i].text;
    size_t p = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (p >= t.size()) return false;
    for (size_t j = p; j < t.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(t[j])) && t[j] != '/' && t[j] != '.') return false;
  }
  return true;
}

}  // namespace

AlgebraSpec parse_algebra_text(const std::string& text, const std::string& filename) {
  AlgebraSpec spec;
  bool have_dim = false;
  for (const auto& toks : tokenize(text)) {
    const std::string& kw = toks[0].text;
    auto need = [&](size_t count, const char* what) {
      if (toks.size() != count + 1)
        fail(filename, toks[0], "'" + kw + "' takes " + what);
    };
    if (kw == "algebra") {
      need(1, "one name");
      spec.name = toks[1].text;
    } else if (kw == "dim") {
      need(1, "one positive integer");
      long n = parse_long(filename, toks[1]);
      if (n < 1 || n > 64) fail(filename, toks[1], "dimension must be in [1, 64]");
      spec.algebra.dim = static_cast<int>(n);
      have_dim = true;
    } else if (kw == "basis") {
      if (!have_dim) fail(filename, toks[0], "'basis' must come after 'dim'");
      need(static_cast<size_t>(spec.algebra.dim), "one name per basis vector");
      spec.algebra.names.clear();
      for (size_t i = 1; i < toks.size(); ++i) spec.algebra.names.push_back(toks[i].text);
    } else if (kw == "bracket") {
      if (!have_dim) fail(filename, toks[0], "'bracket' must come after 'dim'");
      need(4, "indices i j k and a rational coefficient");
      long i = parse_long(filename, toks[1]);
      long j = parse_long(filename, toks[2]);
      long k = parse_long(filename, toks[3]);
      for (size_t a = 1; a <= 3; ++a) {
        long v = a == 1 ? i : a == 2 ? j : k;
        if (v < 1 || v > spec.algebra.dim)
          fail(filename, toks[a], "index out of range (1-based, dim " + std::to_string(spec.algebra.dim) + ")");
      }
      Rational c = parse_rat(filename, toks[4]);
      if (i == j) fail(filename, toks[1], "bracket of a basis vector with itself is zero");
      if (i > j) { std::swap(i, j); c = -c; }
      spec.algebra.brackets.push_back(
          {static_cast<int>(i) - 1, static_cast<int>(j) - 1, static_cast<int>(k) - 1, c});
    } else if (kw == "grading") {
      if (!have_dim) fail(filename, toks[0], "'grading' must come after 'dim'");
      need(static_cast<size_t>(spec.algebra.dim), "one positive integer degree per basis vector");
      spec.degrees.clear();
      for (size_t i = 1; i < toks.size(); ++i) {
        long d = parse_long(filename, toks[i]);
        if (d < 1) fail(filename, toks[i], "degrees must be positive");
        spec.degrees.push_back(static_cast<int>(d));
      }
    } else if (kw == "minpoly") {
      if (toks.size() < 2) fail(filename, toks[0], "'minpoly' takes a polynomial in x or a coefficient list");
      if (all_numeric(toks, 1)) {
        std::vector<Rational> coeffs;
        for (size_t i = 1; i < toks.size(); ++i) coeffs.push_back(parse_rat(filename, toks[i]));
        spec.min_poly = UPoly(std::move(coeffs));
      } else {
        std::string expr;
        for (size_t i = 1; i < toks.size(); ++i) expr += toks[i].text;
        spec.min_poly = parse_poly_expr(filename, toks[1].line, toks[1].col, expr);
      }
    } else if (kw == "isolating") {
      need(2, "two rationals lo hi");
      Rational lo = parse_rat(filename, toks[1]);
      Rational hi = parse_rat(filename, toks[2]);
      if (!(lo < hi)) fail(filename, toks[1], "isolating interval needs lo < hi");
      spec.isolating = QInterval{lo, hi};
    } else {
      fail(filename, toks[0], "unknown keyword '" + kw + "'");
    }
  }
  if (!have_dim) fail(filename, 1, 1, "file does not declare 'dim'");
  if (spec.name.empty()) spec.name = "unnamed";
  return spec;
}

AlgebraSpec parse_algebra_file(const std::string& path) {
  return parse_algebra_text(slurp(path), path);
}

CocycleSpec parse_cocycle_text(const std::string& text, const std::string& filename) {
  CocycleSpec spec;
  for (const auto& toks : tokenize(text)) {
    const std::string& kw = toks[0].text;
    if (kw == "cocycle") {
      if (toks.size() != 2) fail(filename, toks[0], "'cocycle' takes one name");
      spec.name = toks[1].text;
    } else if (kw == "hom") {
      if (toks.size() < 2) fail(filename, toks[0], "'hom' takes one value per lattice generator");
      spec.hom.clear();
      for (size_t i = 1; i < toks.size(); ++i) spec.hom.push_back(parse_dbl(filename, toks[i]));
    } else if (kw == "transfer") {
      if (toks.size() < 2) fail(filename, toks[0], "'transfer' takes a kind and key=value parameters");
      spec.transfer.kind = toks[1].text;
      for (size_t i = 2; i < toks.size(); ++i) {
        const std::string& t = toks[i].text;
        auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= t.size())
          fail(filename, toks[i], "expected key=value, got '" + t + "'");
        std::string key = t.substr(0, eq);
        std::string val = t.substr(eq + 1);
        Token vt{val, toks[i].line, toks[i].col + static_cast<int>(eq) + 1};
        if (key == "coords") {
          spec.transfer.coords.clear();
          std::istringstream vs(val);
          std::string part;
          while (std::getline(vs, part, ',')) {
            Token pt{part, vt.line, vt.col};
            long c = parse_long(filename, pt);
            if (c < 1) fail(filename, pt, "coordinates are 1-based");
            spec.transfer.coords.push_back(static_cast<int>(c) - 1);
          }
          if (spec.transfer.coords.empty()) fail(filename, vt, "empty coordinate list");
        } else if (key == "bandwidth") {
          long b = parse_long(filename, vt);
          if (b < 1 || b > 1024) fail(filename, vt, "bandwidth must be in [1, 1024]");
          spec.transfer.bandwidth = static_cast<int>(b);
        } else if (key == "seed") {
          spec.transfer.seed = static_cast<unsigned>(parse_long(filename, vt));
        } else if (key == "amplitude") {
          spec.transfer.amplitude = parse_dbl(filename, vt);
        } else if (key == "coord") {
          long c = parse_long(filename, vt);
          if (c < 1) fail(filename, vt, "coordinates are 1-based");
          spec.transfer.coord = static_cast<int>(c) - 1;
        } else if (key == "r") {
          spec.transfer.r = parse_dbl(filename, vt);
        } else if (key == "sigma") {
          spec.transfer.sigma = parse_dbl(filename, vt);
        } else {
          fail(filename, toks[i], "unknown transfer parameter '" + key + "'");
        }
      }
    } else if (kw == "resolution") {
      if (toks.size() < 2) fail(filename, toks[0], "'resolution' takes one integer per coordinate");
      spec.resolution.clear();
      for (size_t i = 1; i < toks.size(); ++i) {
        long m = parse_long(filename, toks[i]);
        if (m < 2) fail(filename, toks[i], "resolutions must be at least 2");
        spec.resolution.push_back(static_cast<int>(m));
      }
    } else if (kw == "grid") {
      if (toks.size() != 3) fail(filename, toks[0], "'grid' takes a generator index and a file path");
      long g = parse_long(filename, toks[1]);
      if (g < 1) fail(filename, toks[1], "generator indices are 1-based");
      spec.grid_files.emplace_back(static_cast<int>(g) - 1, toks[2].text);
    } else {
      fail(filename, toks[0], "unknown keyword '" + kw + "'");
    }
  }
  if (spec.name.empty()) spec.name = "unnamed";
  if (spec.hom.empty() && spec.transfer.kind == "none" && spec.grid_files.empty())
    fail(filename, 1, 1, "cocycle spec declares neither hom, transfer, nor grids");
  return spec;
}

CocycleSpec parse_cocycle_file(const std::string& path) {
  CocycleSpec spec = parse_cocycle_text(slurp(path), path);
  std::string dir = dir_of(path);
  for (auto& [g, p] : spec.grid_files)
    if (!p.empty() && p.front() != '/') p = dir + p;
  return spec;
}

NamedGrid read_grid_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "specfile", "cannot open " + path);
  std::string name = "unnamed";
  std::vector<int> dims;
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  bool in_data = false;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    if (!in_data && std::isalpha(static_cast<unsigned char>(line[a]))) {
      std::istringstream ls(line);
      std::string kw;
      ls >> kw;
      if (kw == "grid") {
        if (!(ls >> name)) fail(path, lineno, 1, "'grid' takes one name");
      } else if (kw == "dims") {
        int m;
        while (ls >> m) {
          if (m < 1) fail(path, lineno, 1, "dims must be positive");
          dims.push_back(m);
        }
        if (dims.empty()) fail(path, lineno, 1, "'dims' takes at least one integer");
      } else if (kw == "layout") {
        std::string l;
        ls >> l;
        if (l != "column-major") fail(path, lineno, 1, "only column-major layout is supported");
      } else {
        fail(path, lineno, 1, "unknown header keyword '" + kw + "'");
      }
    } else {
      in_data = true;
      std::istringstream ls(line);
      double v;
      while (ls >> v) vals.push_back(v);
      if (!ls.eof()) fail(path, lineno, 1, "bad sample value");
    }
  }
  if (dims.empty()) fail(path, lineno, 1, "grid file has no 'dims' header");
  GridShape shape(dims);
  if (static_cast<long>(vals.size()) != shape.size())
    fail(path, lineno, 1,
         "expected " + std::to_string(shape.size()) + " samples, got " + std::to_string(vals.size()));
  return NamedGrid{std::move(name), FunctionGrid(shape, std::move(vals))};
}

void write_grid_file(const std::string& path, const FunctionGrid& g, const std::string& name) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "specfile", "cannot write " + path);
  std::string safe = name.empty() ? "unnamed" : name;
  for (char& c : safe)
    if (std::isspace(static_cast<unsigned char>(c))) c = '_';
  f << "grid " << safe << "\ndims";
  for (int m : g.shape.dims) f << ' ' << m;
  f << "\nlayout column-major\n";
  char buf[40];
  for (long i = 0; i < g.shape.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g\n", g.values[static_cast<size_t>(i)]);
    f << buf;
  }
  if (!f) throw Error(ErrorCode::IoError, "specfile", "short write to " + path);
}

std::function<double(const std::vector<double>&)> make_transfer(const TransferSpec& t, int dim) {
  auto check_coord = [&](int c, const char* what) {
    if (c < 0 || c >= dim)
      throw Error(ErrorCode::ParseError, "make_transfer",
                  std::string(what) + " coordinate " + std::to_string(c + 1) +
                      " out of range for dimension " + std::to_string(dim));
  };
  if (t.kind == "torus_trig") {
    if (t.coords.empty())
      throw Error(ErrorCode::ParseError, "make_transfer", "torus_trig needs coords=...");
    for (int c : t.coords) check_coord(c, "torus_trig");
    return torus_trig(t.coords, t.bandwidth, t.seed, t.amplitude);
  }
  if (t.kind == "poisson") {
    check_coord(t.coord, "poisson");
    return poisson_kernel(t.coord, t.r, t.amplitude);
  }
  if (t.kind == "theta") {
    if (dim < 3)
      throw Error(ErrorCode::ParseError, "make_transfer", "theta needs chart dimension >= 3");
    return heisenberg_theta(t.sigma, t.amplitude);
  }
  throw Error(ErrorCode::ParseError, "make_transfer", "unknown transfer kind '" + t.kind + "'");
}

}  // namespace nilrig
