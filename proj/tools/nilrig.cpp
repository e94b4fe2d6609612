// Command-line front door: parses algebra/cocycle spec files, orchestrates
// validate -> lattice-build -> solve pipelines, and writes machine-readable
// reports (JSON + key=value), grid dumps, and plot-ready divisor CSVs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilrig/cohomology.hpp"
#include "nilrig/errors.hpp"
#include "nilrig/lattice.hpp"
#include "nilrig/report.hpp"
#include "nilrig/rotation_solver.hpp"
#include "nilrig/solver.hpp"
#include "nilrig/specfile.hpp"
#include "nilrig/transfers.hpp"
#include "nilrig/upoly.hpp"

namespace fs = std::filesystem;
using namespace nilrig;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

[[noreturn]] void usage_error(const std::string& msg) {
  throw Error(ErrorCode::Usage, "cli", msg);
}

bool power_of_two(long m) { return m > 0 && (m & (m - 1)) == 0; }

std::string res_label(const std::vector<int>& res) {
  std::string s;
  for (int m : res) {
    if (!s.empty()) s += "x";
    s += std::to_string(m);
  }
  return s;
}

std::string poly_str(const UPoly& p) {
  std::string s;
  for (int d = p.degree(); d >= 0; --d) {
    Rational c = p.coeff(d);
    if (c == Rational(0)) continue;
    bool neg = c < Rational(0);
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    Rational ac = neg ? -c : c;
    bool unit = ac == Rational(1);
    if (d == 0 || !unit) s += ac.str();
    if (d > 0) {
      if (!unit) s += "*";
      s += "x";
      if (d > 1) s += "^" + std::to_string(d);
    }
  }
  return s.empty() ? "0" : s;
}

struct SolveFlags {
  std::vector<int> res;
  long K = 0;  // 0 = min(32, min(resolution)/2)
  double tol = 1e-6;
  double fiber_tol = 0.0;
  double divisor_floor = 0.0;
  std::string interp = "spectral";
  int threads = 1;
  int prec = 128;
  long kmax = 4096;
  std::string out;
  bool no_grids = false;
};

InterpKind parse_interp(const std::string& s) {
  if (s == "spectral") return InterpKind::Spectral;
  if (s == "cubic") return InterpKind::Cubic;
  usage_error("--interp must be 'spectral' or 'cubic', got '" + s + "'");
}

Json algebra_json(const AlgebraSpec& spec, const LieAlgebraQ& alg) {
  Json j;
  j["name"] = spec.name;
  j["dim"] = alg.dim();
  j["step"] = alg.step();
  if (!spec.degrees.empty()) j["grading"] = spec.degrees;
  if (spec.min_poly) j["min_poly"] = poly_str(*spec.min_poly);
  return j;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path) {
  AlgebraSpec spec = parse_algebra_file(path);
  LieAlgebraQ alg = validate_algebra(spec.algebra);
  LowerCentralSeries lcs = lower_central_series(alg);
  std::printf("algebra %s: dim %d, nilpotency step s=%d\n", spec.name.c_str(), alg.dim(), alg.step());
  std::printf("lower central series dims:");
  for (const QMatrix& s : lcs.subspaces) std::printf(" %ld", static_cast<long>(s.rows()));
  std::printf("\nJacobi identity: exact\nstrong Malcev order: ok\n");
  if (!spec.degrees.empty()) {
    std::printf("grading:");
    for (int d : spec.degrees) std::printf(" %d", d);
    std::printf("\n");
  }
  if (spec.has_pair_data())
    std::printf("lattice pair data: minpoly %s, isolating [%s, %s]\n",
                poly_str(*spec.min_poly).c_str(), spec.isolating->lo.str().c_str(),
                spec.isolating->hi.str().c_str());
  return 0;
}

// ------------------------------------------------------------------ series

int cmd_series(const std::string& path) {
  AlgebraSpec spec = parse_algebra_file(path);
  LieAlgebraQ alg = validate_algebra(spec.algebra);
  LowerCentralSeries lcs = lower_central_series(alg);
  std::printf("algebra %s: dim %d, nilpotency step s=%d\n", spec.name.c_str(), alg.dim(), alg.step());
  for (size_t l = 0; l < lcs.subspaces.size(); ++l) {
    const QMatrix& sub = lcs.subspaces[l];
    std::printf("n^%zu (dim %ld):", l + 1, static_cast<long>(sub.rows()));
    for (long r = 0; r < sub.rows(); ++r) {
      std::printf(" [");
      for (long c = 0; c < sub.cols(); ++c)
        std::printf("%s%s", c > 0 ? " " : "", sub(r, c).str().c_str());
      std::printf("]");
    }
    std::printf("\n");
  }
  for (size_t l = 0; l < lcs.complements.size(); ++l) {
    const QMatrix& comp = lcs.complements[l];
    std::printf("V_%zu (dim %ld):", l + 1, static_cast<long>(comp.rows()));
    for (long r = 0; r < comp.rows(); ++r) {
      std::printf(" [");
      for (long c = 0; c < comp.cols(); ++c)
        std::printf("%s%s", c > 0 ? " " : "", comp(r, c).str().c_str());
      std::printf("]");
    }
    std::printf("\n");
  }
  return 0;
}

// -------------------------------------------------------------- cohomology

int cmd_cohomology(const std::string& path, const std::string& out) {
  AlgebraSpec spec = parse_algebra_file(path);
  LieAlgebraQ alg = validate_algebra(spec.algebra);
  CohomologyReport rep;
  bool with_lattice = spec.has_pair_data();
  if (with_lattice) {
    CertOptions co;
    co.kmax = 64;  // the certificate is incidental here; keep the build fast
    co.precision_bits = 64;
    LatticePair pair =
        build_diophantine_pair(alg, spec.degrees, *spec.min_poly, *spec.isolating, co);
    std::vector<std::vector<Integer>> forms;
    for (const RelationWord& w : relation_words(pair.gamma)) forms.push_back(w.m);
    rep = cohomology_report(alg, forms);
  } else {
    rep = cohomology_report(alg);
  }
  std::printf("algebra %s: dim %d\n", spec.name.c_str(), alg.dim());
  std::printf("H^0 = %d\nH^1 = %d\nH^2 = %d\n", rep.h0, rep.h1, rep.h2);
  std::printf("derived algebra dim = %d\n", rep.derived_dim);
  if (with_lattice)
    std::printf("dim Hom(Lambda, R) = %d (matches dim H^1)\n", rep.hom_dim);
  std::printf("H^1 basis (rows, dual basis):");
  for (long r = 0; r < rep.h1_basis.rows(); ++r) {
    std::printf(" [");
    for (long c = 0; c < rep.h1_basis.cols(); ++c)
      std::printf("%s%s", c > 0 ? " " : "", rep.h1_basis(r, c).str().c_str());
    std::printf("]");
  }
  std::printf("\n");
  if (!out.empty()) {
    fs::create_directories(out);
    Json j;
    j["tool"] = "nilrig";
    j["command"] = "cohomology";
    j["inputs"] = Json{{"algebra_file", path}};
    j["algebra"] = algebra_json(spec, alg);
    j["cohomology"] = cohomology_json(rep);
    write_text_file(out + "/report.json", j.dump(2) + "\n");
    write_text_file(out + "/report.kv", to_key_values(j));
  }
  return 0;
}

// ------------------------------------------------------------ lattice-build

int cmd_lattice_build(const std::string& path, long kmax, int prec, int threads,
                      const std::string& out) {
  AlgebraSpec spec = parse_algebra_file(path);
  LieAlgebraQ alg = validate_algebra(spec.algebra);
  if (!spec.has_pair_data())
    throw Error(ErrorCode::ParseError, "lattice_build",
                path + " lacks the grading / minpoly / isolating lines needed to build a lattice pair");
  CertOptions co;
  co.kmax = kmax;
  co.precision_bits = prec;
  co.threads = threads;
  double t0 = now_s();
  LatticePair pair = build_diophantine_pair(alg, spec.degrees, *spec.min_poly, *spec.isolating, co);
  double t1 = now_s();

  QAlpha alpha = QAlpha::alpha(pair.field);
  auto witness = verify_graded_automorphism(pair.algebra, pair.degrees, alpha);
  MatrixOf<QAlpha> rel = triangular_relation_check(pair);

  std::printf("lattice pair for %s: alpha = %.12g (minpoly %s)\n", spec.name.c_str(),
              alpha.to_double(), poly_str(*spec.min_poly).c_str());
  std::printf("diag(A):");
  for (int i = 0; i < alg.dim(); ++i) std::printf(" %.12g", pair.a(i, i).to_double());
  std::printf("\nrelation-table diag:");
  for (int i = 0; i < alg.dim(); ++i) std::printf(" %.12g", rel(i, i).to_double());
  std::printf("\nrescale factor: %d\n", pair.gamma.rescale_factor);
  std::printf("closure: %ld words up to length %d reduce to integer coordinates\n",
              pair.gamma.closure_words_checked, pair.gamma.closure_word_len);
  std::printf("graded automorphism: %s\n", witness ? "FAILED" : "exact");
  if (witness)
    throw Error(ErrorCode::GradingViolation, "lattice_build",
                "graded map fails on bracket (" + std::to_string(witness->first + 1) + "," +
                    std::to_string(witness->second + 1) + ")");
  std::printf("certificates (2|sin(pi k a)| >= C k^-alpha for all k != 0):\n");
  std::printf("  index  a             C             alpha  kmax    margin\n");
  for (size_t i = 0; i < pair.diagonal_certs.size(); ++i) {
    const DiophantineCertificate& c = pair.diagonal_certs[i];
    std::printf("  %-6zu %-13.8g %-13.8g %-6d %-7ld %.6g\n", i + 1, c.a_value, c.C.to_double(),
                c.alpha_exp, c.kmax_checked, c.min_margin);
  }
  std::printf("build time: %.2f s\n", t1 - t0);

  if (!out.empty()) {
    fs::create_directories(out);
    Json j;
    j["tool"] = "nilrig";
    j["command"] = "lattice-build";
    j["inputs"] = Json{{"algebra_file", path}, {"kmax", kmax}, {"precision_bits", prec}};
    j["algebra"] = algebra_json(spec, alg);
    j["lattice"] = lattice_json(pair);
    j["certificates"] = certificates_json(pair);
    j["timing"] = Json{{"build_s", t1 - t0}};
    write_text_file(out + "/report.json", j.dump(2) + "\n");
    write_text_file(out + "/report.kv", to_key_values(j));
    write_text_file(out + "/divisors.csv", divisors_csv(pair, std::max<long>(64, std::min<long>(kmax, 512))));
  }
  return 0;
}

// ------------------------------------------------------------------- solve

int cmd_solve(const std::string& alg_path, const std::string& coc_path, SolveFlags flags) {
  AlgebraSpec aspec = parse_algebra_file(alg_path);
  CocycleSpec cspec = parse_cocycle_file(coc_path);
  LieAlgebraQ alg = validate_algebra(aspec.algebra);
  const int n = alg.dim();

  std::vector<int> res = !flags.res.empty() ? flags.res : cspec.resolution;
  if (res.empty()) usage_error("no resolution: pass --res or add a 'resolution' line to " + coc_path);
  if (static_cast<int>(res.size()) != n)
    usage_error("resolution has " + std::to_string(res.size()) + " entries for a dim-" +
                std::to_string(n) + " chart");
  long min_res = res[0];
  for (int m : res) {
    if (!power_of_two(m) || m < 8)
      usage_error("resolutions must be powers of two >= 8, got " + std::to_string(m));
    min_res = std::min<long>(min_res, m);
  }
  if (!(flags.tol > 0.0 && flags.tol < 1.0)) usage_error("--tol must lie in (0, 1)");
  if (flags.K == 0) flags.K = std::min<long>(32, min_res / 2);
  if (flags.K < 1 || flags.K > min_res / 2)
    usage_error("--K must lie in [1, min(resolution)/2] = [1, " + std::to_string(min_res / 2) + "]");
  if (flags.threads < 1 || flags.threads > 64) usage_error("--threads must lie in [1, 64]");
  if (flags.prec < 32 || flags.prec > 4096) usage_error("--prec must lie in [32, 4096]");
  if (flags.kmax < 16) usage_error("--kmax must be at least 16");
  InterpKind interp = parse_interp(flags.interp);
  if (!aspec.has_pair_data())
    throw Error(ErrorCode::ParseError, "solve",
                alg_path + " lacks the grading / minpoly / isolating lines needed to solve");

  std::string out = flags.out.empty() ? "runs/" + cspec.name + "-" + res_label(res) : flags.out;
  fs::create_directories(out);

  Json rep;
  rep["tool"] = "nilrig";
  rep["command"] = "solve";
  rep["inputs"] = Json{{"algebra_file", alg_path},
                       {"cocycle_file", coc_path},
                       {"algebra", aspec.name},
                       {"cocycle", cspec.name},
                       {"resolution", res},
                       {"K", flags.K},
                       {"tol", flags.tol},
                       {"fiber_tol", flags.fiber_tol},
                       {"divisor_floor", flags.divisor_floor},
                       {"interp", flags.interp},
                       {"threads", flags.threads},
                       {"precision_bits", flags.prec},
                       {"kmax", flags.kmax}};
  rep["algebra"] = algebra_json(aspec, alg);

  try {
    GridShape shape(res);
    const bool rational_circle = n == 1 && aspec.min_poly->degree() == 1;
    double t0 = now_s();

    // The degree-1 circle runs without a lattice pair: a rational rotation
    // number admits no Diophantine certificate, and the point of accepting it
    // is to let the solver report the resonance honestly.
    std::optional<LatticePair> pair;
    double circle_a = 0.0;
    if (rational_circle) {
      circle_a = (-aspec.min_poly->coeff(0) / aspec.min_poly->coeff(1)).to_double();
      rep["lattice"] = Json{{"alpha", circle_a}, {"certified", false}};
    } else {
      CertOptions co;
      co.kmax = flags.kmax;
      co.precision_bits = flags.prec;
      co.threads = flags.threads;
      pair = build_diophantine_pair(alg, aspec.degrees, *aspec.min_poly, *aspec.isolating, co);
      rep["lattice"] = lattice_json(*pair);
      rep["certificates"] = certificates_json(*pair);
    }
    double t1 = now_s();

    // Assemble the cocycle: symbolic parts first, then raw grids on top.
    Cocycle c(shape, n);
    if (!cspec.hom.empty()) {
      if (static_cast<int>(cspec.hom.size()) != n)
        throw Error(ErrorCode::GridMismatch, "solve",
                    "hom has " + std::to_string(cspec.hom.size()) + " values for " +
                        std::to_string(n) + " generators");
      rep["inputs"]["hom"] = cspec.hom;
      if (rational_circle) {
        for (auto& v : c.grids[0].values) v += cspec.hom[0];
      } else {
        c += make_hom_cocycle(*pair, shape, cspec.hom);
      }
    }
    if (cspec.transfer.kind != "none") {
      auto fn = make_transfer(cspec.transfer, n);
      rep["inputs"]["transfer"] = Json{{"kind", cspec.transfer.kind}};
      if (rational_circle) {
        const long m = shape.fiber_len();
        for (long i = 0; i < m; ++i) {
          double t = static_cast<double>(i) / static_cast<double>(m);
          c.grids[0].values[static_cast<size_t>(i)] +=
              fn({t + circle_a}) - fn({t});
        }
      } else {
        c += make_coboundary(*pair, shape, fn);
      }
    }
    for (const auto& [gi, gpath] : cspec.grid_files) {
      if (gi >= n)
        throw Error(ErrorCode::GridMismatch, "solve",
                    "grid generator index " + std::to_string(gi + 1) + " out of range");
      NamedGrid ng = read_grid_file(gpath);
      if (ng.values.shape != shape)
        throw Error(ErrorCode::GridMismatch, "solve",
                    gpath + " has dims that do not match the run resolution " + res_label(res));
      c.grids[static_cast<size_t>(gi)] += ng.values;
    }

    // Solve.
    ReductionResult result;
    if (rational_circle) {
      RotationSolveOptions ropts;
      ropts.K = flags.K;
      ropts.tol = flags.tol;
      ropts.divisor_floor = flags.divisor_floor;
      RotationSolveResult rs = solve_rotation_coboundary(c.grids[0].values, circle_a, nullptr, ropts);
      result.c0 = {rs.c0};
      result.transfer = FunctionGrid(shape, rs.h);
      result.residual = rs.residual_sup;
      LevelReport lr;
      lr.level = 1;
      lr.fiber_len = shape.fiber_len();
      lr.K_eff = rs.K_eff;
      lr.a = circle_a;
      lr.divisor_min = rs.divisor_min;
      lr.divisor_floor = rs.divisor_floor;
      lr.tail_mass = rs.tail_mass;
      lr.decay_m = rs.decay_m;
      lr.c0_central = rs.c0;
      lr.h = result.transfer;
      result.levels = {lr};
    } else {
      SolveOptions sopts;
      sopts.K = flags.K;
      sopts.tol = flags.tol;
      sopts.fiber_tol = flags.fiber_tol;
      sopts.divisor_floor = flags.divisor_floor;
      sopts.interp = interp;
      sopts.threads = flags.threads;
      result = reduce_cocycle(*pair, c, sopts);
    }
    double t2 = now_s();

    rep["solve"] = Json{{"c0", result.c0},
                        {"residual", result.residual},
                        {"hom_defect", result.hom_defect},
                        {"levels", levels_json(result.levels)}};

    // Grid dumps and the divisor spectrum.
    Json outputs;
    if (!flags.no_grids) {
      write_grid_file(out + "/P.grid", result.transfer, "P");
      outputs["transfer_grid"] = "P.grid";
      Json lg = Json::array();
      for (const LevelReport& l : result.levels)
        if (l.h) {
          std::string name = "h_level" + std::to_string(l.level) + ".grid";
          write_grid_file(out + "/" + name, *l.h, "h_level" + std::to_string(l.level));
          lg.push_back(name);
        }
      outputs["level_grids"] = std::move(lg);
    }
    if (pair) {
      write_text_file(out + "/divisors.csv",
                      divisors_csv(*pair, std::max<long>(64, std::min<long>(flags.K * 2, 512))));
      outputs["divisor_csv"] = "divisors.csv";
    }
    rep["outputs"] = std::move(outputs);
    rep["status"] = Json{{"exit", 0}, {"error", ""}};
    rep["timing"] = Json{{"build_s", t1 - t0}, {"solve_s", t2 - t1}, {"total_s", t2 - t0}};
    write_text_file(out + "/report.json", rep.dump(2) + "\n");
    write_text_file(out + "/report.kv", to_key_values(rep));

    std::printf("solve %s / %s at %s: done\n", aspec.name.c_str(), cspec.name.c_str(),
                res_label(res).c_str());
    std::printf("c0 =");
    for (double v : result.c0) std::printf(" %.12g", v);
    std::printf("\nresidual   = %.6e\nhom defect = %.6e\n", result.residual, result.hom_defect);
    std::printf("level  m     K_eff  a            div_min      tail         c0\n");
    for (const LevelReport& l : result.levels)
      std::printf("%-6d %-5ld %-6ld %-12.8g %-12.6g %-12.6g %.12g\n", l.level, l.fiber_len,
                  l.K_eff, l.a, l.divisor_min, l.tail_mass, l.c0_central);
    std::printf("report: %s/report.json\n", out.c_str());
    return 0;
  } catch (const Error& e) {
    rep["status"] = Json{{"exit", exit_code_for(e.code())},
                         {"error", std::string(e.what())},
                         {"error_code", error_code_name(e.code())}};
    try {
      write_text_file(out + "/report.json", rep.dump(2) + "\n");
      write_text_file(out + "/report.kv", to_key_values(rep));
    } catch (const Error&) {
      // the original failure is the interesting one
    }
    throw;
  }
}

// ------------------------------------------------------------------ report

int cmd_report(const std::string& dir) {
  std::string table;
  Json merged = merge_reports(dir, &table);
  std::fputs(table.c_str(), stdout);
  write_text_file(dir + "/summary.json", merged.dump(2) + "\n");
  write_text_file(dir + "/convergence.txt", table);
  std::printf("summary: %s/summary.json\n", dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact nilpotent group laws, Diophantine lattice pairs, and the small-divisor cocycle reduction"};
  app.require_subcommand(1);

  std::string alg_path, coc_path, out_dir, report_dir;
  long kmax = 4096;
  int prec = 128, threads = 1;
  SolveFlags flags;

  CLI::App* validate = app.add_subcommand("validate", "check an algebra spec (Jacobi, order, nilpotency)");
  validate->add_option("algebra", alg_path, "path to a .alg spec")->required();

  CLI::App* series = app.add_subcommand("series", "print the lower central series and complements");
  series->add_option("algebra", alg_path, "path to a .alg spec")->required();

  CLI::App* cohomology = app.add_subcommand("cohomology", "Chevalley-Eilenberg H^0..H^2 and Hom dimension");
  cohomology->add_option("algebra", alg_path, "path to a .alg spec")->required();
  cohomology->add_option("--out", out_dir, "directory for report.json / report.kv");

  CLI::App* lattice = app.add_subcommand("lattice-build", "build the Diophantine lattice pair with certificates");
  lattice->add_option("algebra", alg_path, "path to a .alg spec")->required();
  lattice->add_option("--kmax", kmax, "certificate spot-check frequency range")->capture_default_str();
  lattice->add_option("--prec", prec, "certificate precision in bits")->capture_default_str();
  lattice->add_option("--threads", threads, "certificate spot-check threads")->capture_default_str();
  lattice->add_option("--out", out_dir, "directory for report and divisors.csv");

  CLI::App* solve = app.add_subcommand("solve", "reduce a cocycle to homomorphism + coboundary");
  solve->add_option("algebra", alg_path, "path to a .alg spec")->required();
  solve->add_option("cocycle", coc_path, "path to a .coc spec")->required();
  solve->add_option("--res", flags.res, "grid resolution per coordinate (powers of two >= 8)");
  solve->add_option("--K", flags.K, "fiber mode cutoff (default min(32, min res / 2))");
  solve->add_option("--tol", flags.tol, "solver tolerance in (0,1)")->capture_default_str();
  solve->add_option("--fiber-tol", flags.fiber_tol, "fiber-constancy tolerance (0 = tol)")->capture_default_str();
  solve->add_option("--divisor-floor", flags.divisor_floor, "explicit small-divisor floor (0 = from certificate)")->capture_default_str();
  solve->add_option("--interp", flags.interp, "translated-grid interpolation: spectral|cubic")->capture_default_str();
  solve->add_option("--threads", flags.threads, "fiber solves in parallel")->capture_default_str();
  solve->add_option("--prec", flags.prec, "certificate precision in bits")->capture_default_str();
  solve->add_option("--kmax", flags.kmax, "certificate spot-check frequency range")->capture_default_str();
  solve->add_option("--out", flags.out, "output directory (default runs/<cocycle>-<res>)");
  solve->add_flag("--no-grids", flags.no_grids, "skip P.grid / h_level*.grid dumps");

  CLI::App* report = app.add_subcommand("report", "merge solve reports into a convergence table");
  report->add_option("dir", report_dir, "directory containing run subdirectories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    if (validate->parsed()) return cmd_validate(alg_path);
    if (series->parsed()) return cmd_series(alg_path);
    if (cohomology->parsed()) return cmd_cohomology(alg_path, out_dir);
    if (lattice->parsed()) return cmd_lattice_build(alg_path, kmax, prec, threads, out_dir);
    if (solve->parsed()) return cmd_solve(alg_path, coc_path, flags);
    if (report->parsed()) return cmd_report(report_dir);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 70;
  }
  return 64;
}
