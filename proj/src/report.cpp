#include "nilrig/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilrig/errors.hpp"

namespace nilrig {

namespace {

/// Doubles that JSON cannot carry (inf from "no measurable decay") are
/// serialized as null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    if (j.empty()) out += prefix + "=[]\n";
  } else if (j.is_string()) {
    out += prefix + "=" + j.get<std::string>() + "\n";
  } else {
    out += prefix + "=" + j.dump() + "\n";
  }
}

}  // namespace

Json cohomology_json(const CohomologyReport& r) {
  Json j;
  j["h0"] = r.h0;
  j["h1"] = r.h1;
  j["h2"] = r.h2;
  j["derived_dim"] = r.derived_dim;
  j["hom_dim"] = r.hom_dim;
  return j;
}

Json lattice_json(const LatticePair& pair) {
  Json j;
  j["degrees"] = pair.degrees;
  j["rescale_factor"] = pair.gamma.rescale_factor;
  j["rescale_levels"] = pair.gamma.rescale_levels;
  Json diag = Json::array();
  for (int i = 0; i < pair.algebra.dim(); ++i) diag.push_back(pair.a(i, i).to_double());
  j["diag"] = diag;
  j["alpha"] = QAlpha::alpha(pair.field).to_double();
  return j;
}

Json certificates_json(const LatticePair& pair) {
  Json arr = Json::array();
  for (size_t i = 0; i < pair.diagonal_certs.size(); ++i) {
    const DiophantineCertificate& c = pair.diagonal_certs[i];
    Json e;
    e["index"] = i + 1;
    e["a"] = c.a_value;
    e["C"] = c.C.to_double();
    e["alpha_exp"] = c.alpha_exp;
    e["kmax_checked"] = c.kmax_checked;
    e["precision_bits"] = c.precision_bits;
    e["min_margin"] = c.min_margin;
    arr.push_back(std::move(e));
  }
  return arr;
}

Json levels_json(const std::vector<LevelReport>& levels) {
  Json arr = Json::array();
  for (const LevelReport& l : levels) {
    Json e;
    e["level"] = l.level;
    e["fiber_len"] = l.fiber_len;
    e["K_eff"] = l.K_eff;
    e["a"] = l.a;
    e["divisor_min"] = l.divisor_min;
    e["divisor_floor"] = l.divisor_floor;
    e["tail_mass"] = l.tail_mass;
    e["decay_m"] = num(l.decay_m);
    e["fiber_residual"] = l.fiber_residual;
    e["base_jump"] = l.base_jump;
    e["c0_central"] = l.c0_central;
    arr.push_back(std::move(e));
  }
  return arr;
}

std::string to_key_values(const Json& j) {
  std::string out;
  flatten(j, "", out);
  return out;
}

std::string divisors_csv(const LatticePair& pair, long kmax) {
  std::string out = "level,k,a,divisor,floor\n";
  for (size_t i = 0; i < pair.diagonal_certs.size(); ++i) {
    const DiophantineCertificate& cert = pair.diagonal_certs[i];
    double a = cert.a_value;
    double cval = cert.C.to_double();
    for (long k = 1; k <= kmax; ++k) {
      double divisor = std::abs(2.0 * std::sin(M_PI * static_cast<double>(k) * a));
      double floor = cval * std::pow(static_cast<double>(k), -cert.alpha_exp);
      out += std::to_string(i + 1) + "," + std::to_string(k) + "," + fmt("%.17g", a) + "," +
             fmt("%.17g", divisor) + "," + fmt("%.17g", floor) + "\n";
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "report", "cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "report", "cannot write " + path);
  f << content;
  if (!f) throw Error(ErrorCode::IoError, "report", "short write to " + path);
}

Json merge_reports(const std::string& dir, std::string* table) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error(ErrorCode::IoError, "report", dir + " is not a directory");

  std::vector<std::string> paths;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec))
    if (it->is_regular_file() && it->path().filename() == "report.json") paths.push_back(it->path().string());
  std::sort(paths.begin(), paths.end());
  if (paths.empty())
    throw Error(ErrorCode::IoError, "report", "no report.json found under " + dir);

  struct Run {
    Json doc;
    std::string path;
    long cells = 0;
    std::string res_label;
    double residual = 0.0;
    double hom_defect = 0.0;
    bool solved = false;
  };
  std::vector<Run> runs;
  for (const std::string& p : paths) {
    Run r;
    r.path = p;
    try {
      r.doc = Json::parse(read_text_file(p));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, "report", p + ": " + e.what());
    }
    if (r.doc.contains("inputs") && r.doc["inputs"].contains("resolution")) {
      r.cells = 1;
      for (const auto& m : r.doc["inputs"]["resolution"]) {
        long v = m.get<long>();
        r.cells *= v;
        if (!r.res_label.empty()) r.res_label += "x";
        r.res_label += std::to_string(v);
      }
    }
    if (r.doc.contains("status") && r.doc["status"].value("exit", 1) == 0 && r.doc.contains("solve")) {
      r.solved = true;
      r.residual = r.doc["solve"].value("residual", 0.0);
      r.hom_defect = r.doc["solve"].value("hom_defect", 0.0);
    }
    runs.push_back(std::move(r));
  }
  std::stable_sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.cells < b.cells; });

  std::ostringstream tab;
  tab << "resolution        residual      ratio     hom_defect\n";
  Json conv = Json::array();
  const Run* prev = nullptr;
  for (const Run& r : runs) {
    if (!r.solved) continue;
    double ratio = 0.0;
    bool have_ratio = prev != nullptr && r.residual > 0.0;
    if (have_ratio) ratio = prev->residual / r.residual;
    char line[160];
    std::snprintf(line, sizeof line, "%-17s %-13.3e %-9s %.3e\n", r.res_label.c_str(), r.residual,
                  have_ratio ? fmt("%.2f", ratio).c_str() : "-", r.hom_defect);
    tab << line;
    Json e;
    e["resolution"] = r.res_label;
    e["residual"] = r.residual;
    if (have_ratio) e["ratio"] = ratio;
    e["hom_defect"] = r.hom_defect;
    conv.push_back(std::move(e));
    prev = &r;
  }
  if (conv.empty())
    throw Error(ErrorCode::IoError, "report", "no successful solve runs under " + dir);

  Json merged;
  Json docs = Json::array();
  for (Run& r : runs) docs.push_back(std::move(r.doc));
  merged["runs"] = std::move(docs);
  merged["convergence"] = std::move(conv);
  if (table) *table = tab.str();
  return merged;
}

}  // namespace nilrig
