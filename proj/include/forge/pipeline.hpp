#pragma once

// Construction -> graph -> certification runs driven by a RunConfig, shared
// by the forge CLI and the tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "forge/report.hpp"

namespace forge {

struct RunConfig {
  std::string recipe = "sl2-standard";
  std::vector<std::uint64_t> p{5};
  unsigned k = 1;
  unsigned d = 2;
  unsigned m = 1;
  unsigned s = 1;
  unsigned trials = 200;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  unsigned max_iter = 20000;
  std::vector<std::string> cert{"spectrum"};
  std::optional<double> assert_lambda_below;
  std::string csv;
  std::string json;
  std::string export_edges;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::string target;   // decompose: "sl:<d>:<q>" or "alt:<n>"
  std::string factors;  // decompose: "five-copies", "blocks:<k>", "root-subgroups", "windows:<n_k>"
};

/// Keys mirror the CLI flags ("max-iter", "assert-lambda-below", ...). Values
/// may be JSON numbers/arrays or the strings a flag would carry ("3,5,7").
/// Keys present in `j` override `base`.
RunConfig config_from_json(const Json& j, RunConfig base = {});
Json config_to_json(const RunConfig& c);

inline constexpr const char* kRecipes[] = {"sl2-standard", "torus-conj", "ros-sl2", "elementary", "cube", "el3-power"};
inline constexpr const char* kCertifications[] = {"spectrum",  "expansion", "diameter",
                                                  "decompose", "schreier",  "class-average"};

struct BuiltRecipe {
  std::string recipe;
  Json params;
  GeneratingSet set;
  SparseGraph graph;
  std::optional<Enumeration> group;  // Cayley recipes
  Json search;                       // conjugator searches, when any
  std::uint64_t torus_order = 0;
};

/// Builds the generating set and its graph for one family member `p`.
BuiltRecipe build_recipe(const RunConfig& c, std::uint64_t p);

struct RunOutcome {
  Json report;           // deterministic part under every key except "timing"
  int exit_code = 0;     // 0 ok, 2 certification failed, 1 error
  std::string message;
};

RunOutcome run(const RunConfig& c);
RunOutcome decompose(const RunConfig& c);

/// CSV with header comment "# forge-scan v1", one row per entry of c.p.
std::string scan_csv(const RunConfig& c);

/// Report with the "timing" object removed.
Json without_timing(Json report);

/// Runs `command` ("run", "scan", "decompose"), writes requested files and
/// prints reports to `out` when no path is given. Returns the exit code.
int execute(const std::string& command, const RunConfig& c, std::ostream& out, std::ostream& err);

}  // namespace forge
