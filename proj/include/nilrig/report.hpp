#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nilrig/cohomology.hpp"
#include "nilrig/lattice.hpp"
#include "nilrig/solver.hpp"

namespace nilrig {

/// Reports keep insertion order so identical configurations serialize to
/// identical bytes (modulo the "timing" subtree).
using Json = nlohmann::ordered_json;

Json cohomology_json(const CohomologyReport& r);
Json lattice_json(const LatticePair& pair);
Json certificates_json(const LatticePair& pair);
Json levels_json(const std::vector<LevelReport>& levels);

/// Flat line-oriented key=value rendering: nested keys joined with '.',
/// array elements indexed. Timing keys all live under "timing." so byte
/// comparisons can filter them with a prefix match.
std::string to_key_values(const Json& j);

/// Plot-ready small-divisor spectra: one row per (level, k) with columns
/// level,k,a,divisor,floor where divisor = |2 sin(pi k a)| for the level's
/// rotation number a and floor = C*k^-alpha from its certificate.
std::string divisors_csv(const LatticePair& pair, long kmax);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Finds report.json files under dir (recursively), orders successful solve
/// runs by total grid size, and builds the convergence table (residual vs
/// resolution with improvement ratios). Returns the consolidated document
/// {"runs": [...], "convergence": [...]} and renders the table into *table.
/// Throws IoError when dir holds no reports.
Json merge_reports(const std::string& dir, std::string* table);

}  // namespace nilrig
