#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "forge/pipeline.hpp"

using namespace forge;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> cells(const std::string& row) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : row) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

// Drops the runtime_ms column (index 8).
std::string strip_runtime(const std::string& csv) {
  std::string out;
  for (const auto& line : lines(csv)) {
    if (line.empty() || line[0] == '#') {
      out += line + '\n';
      continue;
    }
    auto c = cells(line);
    c.erase(c.begin() + 8);
    for (const auto& x : c) out += x + '|';
    out += '\n';
  }
  return out;
}

struct Proc {
  int code = -1;
  std::string err;
};

Proc forge_cli(const std::string& args) {
  const auto err_path = std::filesystem::temp_directory_path() / "forge_test_stderr.txt";
  const std::string cmd = std::string(FORGE_BIN) + " " + args + " > /dev/null 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  Proc p;
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  p.err = ss.str();
  return p;
}

}  // namespace

TEST_CASE("config file values and flag overrides") {
  const Json file = Json::parse(R"({"recipe": "elementary", "p": [3], "d": 3, "cert": "spectrum,diameter",
                                    "assert-lambda-below": 0.99, "max-iter": 500})");
  RunConfig c = config_from_json(file);
  CHECK(c.recipe == "elementary");
  CHECK(c.p == std::vector<std::uint64_t>{3});
  CHECK(c.d == 3);
  CHECK(c.cert == std::vector<std::string>{"spectrum", "diameter"});
  CHECK(c.assert_lambda_below == doctest::Approx(0.99));
  CHECK(c.max_iter == 500);

  const Json flags{{"d", "2"}, {"p", "3,5,7"}, {"seed", "9"}};
  c = config_from_json(flags, c);
  CHECK(c.d == 2);
  CHECK(c.p == std::vector<std::uint64_t>{3, 5, 7});
  CHECK(c.seed == 9);
  CHECK(c.recipe == "elementary");

  const RunConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));

  CHECK_THROWS_AS(config_from_json(Json{{"bogus", 1}}), Error);
  CHECK_THROWS_AS(config_from_json(Json{{"cert", "spectrum,nonsense"}}), Error);
  CHECK_THROWS_AS(config_from_json(Json{{"p", "3,x"}}), Error);
}

TEST_CASE("run report carries the certificates") {
  RunConfig c;
  c.p = {7};
  c.cert = {"spectrum", "diameter", "class-average"};
  const RunOutcome r = run(c);
  CHECK(r.exit_code == 0);
  const Json& rep = r.report;
  CHECK(rep["graph"]["n"] == 336);
  CHECK(rep["graph"]["connected"] == true);
  CHECK(rep["certifications"]["spectrum"]["oracle_delta"].get<double>() <= 1e-8);
  CHECK(rep["certifications"]["diameter"]["exact"] == true);
  CHECK(rep["certifications"]["class-average"]["spectrum"][0]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(rep.contains("timing"));
  CHECK_FALSE(without_timing(rep).contains("timing"));

  c.assert_lambda_below = 0.5;
  CHECK(run(c).exit_code == 2);
}

TEST_CASE("reports do not depend on the thread count") {
  RunConfig c;
  c.recipe = "torus-conj";
  c.p = {5};
  c.k = 2;
  c.trials = 6;
  c.cert = {"spectrum", "diameter"};
  RunConfig scan_cfg;
  scan_cfg.recipe = "sl2-standard";
  scan_cfg.p = {3, 5, 7, 11, 13};
  scan_cfg.cert = {"spectrum", "diameter"};

  setenv("FORGE_THREADS", "1", 1);
  const Json one = without_timing(run(c).report);
  const std::string scan_one = strip_runtime(scan_csv(scan_cfg));
  setenv("FORGE_THREADS", "4", 1);
  const Json four = without_timing(run(c).report);
  const std::string scan_four = strip_runtime(scan_csv(scan_cfg));
  unsetenv("FORGE_THREADS");
  CHECK(one.dump() == four.dump());
  CHECK(scan_one == scan_four);
}

TEST_CASE("scan rows follow the family") {
  RunConfig c;
  c.recipe = "torus-conj";
  c.p = {2, 3, 4, 5};
  c.trials = 4;
  const auto rows = lines(scan_csv(c));
  REQUIRE(rows.size() == 2 + c.p.size());
  CHECK(rows[0] == "# forge-scan v1");
  const auto header = cells(rows[1]);
  REQUIRE(header.size() == 11);
  CHECK(header[7] == "torus_order");
  for (std::size_t i = 0; i < c.p.size(); ++i) {
    const auto row = cells(rows[2 + i]);
    CHECK(row[7] == std::to_string(c.p[i] + 1));
    CHECK(row[10].empty());
  }

  c.p.clear();
  CHECK(lines(scan_csv(c)).size() == 2);

  c.recipe = "sl2-standard";
  c.p = {3, 9, 5};
  const auto mixed = lines(scan_csv(c));
  REQUIRE(mixed.size() == 5);
  CHECK(cells(mixed[2])[10].empty());
  CHECK(cells(mixed[3])[10] == "NotPrime(9)");
  CHECK(cells(mixed[3])[2].empty());
  CHECK(cells(mixed[4])[2] == "120");
}

TEST_CASE("decompose targets") {
  RunConfig c;
  c.target = "sl:3:2";
  c.factors = "five-copies";
  const Json five = decompose(c).report["decomposition"];
  CHECK(five["depth"].get<unsigned>() <= 5);
  CHECK(five["coverage_by_round"].back() == 1.0);

  c.factors = "root-subgroups";
  CHECK(decompose(c).report["decomposition"]["max_word_length"].get<unsigned>() >= 1);

  c.target = "alt:7";
  c.factors = "windows:5";
  CHECK(decompose(c).report["decomposition"]["group_order"] == 2520);

  c.target = "sl:3";
  CHECK_THROWS_AS(decompose(c), Error);
}

TEST_CASE("recipes reject what they cannot build") {
  RunConfig c;
  c.recipe = "el3-power";
  c.k = 2;
  CHECK_THROWS_AS(build_recipe(c, 0), Error);  // SL_6(F_2) exceeds the default cap
  c.recipe = "no-such-recipe";
  CHECK_THROWS_AS(build_recipe(c, 5), Error);
  c.recipe = "cube";
  c.k = 1;
  c.m = 9;  // 7^9 points
  CHECK_THROWS_AS(build_recipe(c, 0), Error);
}

TEST_CASE("cli exit codes") {
  CHECK(forge_cli("run --recipe sl2-standard --p 5").code == 0);
  CHECK(forge_cli("run --recipe sl2-standard --p 7 --assert-lambda-below 0.1").code == 2);
  const Proc bad = forge_cli("run --recipe sl2-standard --p 9");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("NotPrime(9)") != std::string::npos);
  CHECK(forge_cli("run --no-such-flag").code == 1);
  CHECK(forge_cli("scan --recipe sl2-standard --p 3,9").code == 0);
}
