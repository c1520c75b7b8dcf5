// forge: build expander generating sets, certify their graphs, emit reports.
//
//   forge run --recipe torus-conj --p 5 --k 2 --cert spectrum,diameter
//   forge scan --recipe sl2-standard --p 3,5,7,11 --csv out.csv
//   forge decompose --target sl:3:2 --factors five-copies

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "forge/pipeline.hpp"

namespace {

// Flags whose value is carried verbatim into the config JSON.
constexpr const char* kValueFlags[] = {"recipe", "p",   "k",    "d",    "m",           "s",      "trials",
                                       "seed",   "tol", "max-iter", "cert", "assert-lambda-below", "csv",
                                       "json",   "export-edges", "cap", "target", "factors"};

void add_shared(CLI::App* cmd, std::map<std::string, std::string>& values, std::string& config_path) {
  for (const char* flag : kValueFlags) cmd->add_option(std::string("--") + flag, values[flag]);
  cmd->add_option("--config", config_path, "JSON file with the same keys as the flags");
}

forge::RunConfig resolve(const std::map<std::string, std::string>& values, CLI::App* cmd,
                         const std::string& config_path) {
  forge::RunConfig c;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw forge::Error(forge::ErrorKind::IoError, config_path);
    forge::Json file;
    try {
      file = forge::Json::parse(in);
    } catch (const forge::Json::exception& e) {
      throw forge::Error(forge::ErrorKind::InvalidArgument, config_path + ": " + e.what());
    }
    c = forge::config_from_json(file, c);
  }
  forge::Json flags = forge::Json::object();
  for (const auto& [key, v] : values)
    if (cmd->count("--" + key) > 0) flags[key] = v;
  return forge::config_from_json(flags, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expander generating sets over finite groups"};
  app.require_subcommand(1);
  std::map<std::string, std::string> values;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Build one recipe and certify it");
  CLI::App* scan = app.add_subcommand("scan", "Run a recipe over a list of p, one CSV row each");
  CLI::App* dec = app.add_subcommand("decompose", "Bounded-generation and product-cover reports");
  for (CLI::App* cmd : {run, scan, dec}) add_shared(cmd, values, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  forge::RunConfig c;
  try {
    c = resolve(values, cmd, config_path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return forge::execute(cmd->get_name(), c, std::cout, std::cerr);
}
