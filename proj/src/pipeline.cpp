#include "forge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "forge/parallel.hpp"

namespace forge {

// ---------------------------------------------------------------------------
// Config

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') {
    throw Error(ErrorKind::InvalidArgument, key + "=" + s);
  }
  return v;
}

double parse_double(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(ErrorKind::InvalidArgument, key + "=" + s);
  return v;
}

std::uint64_t get_uint(const Json& j, const std::string& key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_string()) return parse_uint(key, j.get<std::string>());
  throw Error(ErrorKind::InvalidArgument, key + " must be a non-negative integer");
}

unsigned get_small(const Json& j, const std::string& key) {
  const std::uint64_t v = get_uint(j, key);
  if (v > 1'000'000) throw Error(ErrorKind::InvalidArgument, key + " out of range");
  return static_cast<unsigned>(v);
}

double get_double(const Json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(key, j.get<std::string>());
  throw Error(ErrorKind::InvalidArgument, key + " must be a number");
}

std::vector<std::string> get_list(const Json& j, const std::string& key) {
  if (j.is_string()) return split(j.get<std::string>(), ',');
  if (!j.is_array()) throw Error(ErrorKind::InvalidArgument, key + " must be a list");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  return out;
}

}  // namespace

RunConfig config_from_json(const Json& j, RunConfig c) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "recipe") {
      c.recipe = v.get<std::string>();
    } else if (key == "p") {
      c.p.clear();
      if (v.is_number()) {
        c.p.push_back(get_uint(v, key));
      } else {
        for (const auto& x : get_list(v, key)) c.p.push_back(parse_uint(key, x));
      }
    } else if (key == "k") {
      c.k = get_small(v, key);
    } else if (key == "d") {
      c.d = get_small(v, key);
    } else if (key == "m") {
      c.m = get_small(v, key);
    } else if (key == "s") {
      c.s = get_small(v, key);
    } else if (key == "trials") {
      c.trials = get_small(v, key);
    } else if (key == "seed") {
      c.seed = get_uint(v, key);
    } else if (key == "tol") {
      c.tol = get_double(v, key);
    } else if (key == "max-iter") {
      c.max_iter = get_small(v, key);
    } else if (key == "cert") {
      c.cert = get_list(v, key);
    } else if (key == "assert-lambda-below") {
      if (v.is_null()) {
        c.assert_lambda_below.reset();
      } else {
        c.assert_lambda_below = get_double(v, key);
      }
    } else if (key == "csv") {
      c.csv = v.get<std::string>();
    } else if (key == "json") {
      c.json = v.get<std::string>();
    } else if (key == "export-edges") {
      c.export_edges = v.get<std::string>();
    } else if (key == "cap") {
      c.cap = get_uint(v, key);
    } else if (key == "target") {
      c.target = v.get<std::string>();
    } else if (key == "factors") {
      c.factors = v.get<std::string>();
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown config key " + key);
    }
  }
  for (const auto& cert : c.cert) {
    if (std::find(std::begin(kCertifications), std::end(kCertifications), cert) == std::end(kCertifications)) {
      throw Error(ErrorKind::InvalidArgument, "unknown certification " + cert);
    }
  }
  if (c.tol <= 0) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["recipe"] = c.recipe;
  j["p"] = c.p;
  j["k"] = c.k;
  j["d"] = c.d;
  j["m"] = c.m;
  j["s"] = c.s;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["tol"] = c.tol;
  j["max-iter"] = c.max_iter;
  j["cert"] = c.cert;
  j["assert-lambda-below"] = c.assert_lambda_below ? Json(*c.assert_lambda_below) : Json(nullptr);
  j["csv"] = c.csv;
  j["json"] = c.json;
  j["export-edges"] = c.export_edges;
  j["cap"] = c.cap;
  if (!c.target.empty()) j["target"] = c.target;
  if (!c.factors.empty()) j["factors"] = c.factors;
  return j;
}

// ---------------------------------------------------------------------------
// Recipes

namespace {

FieldPtr field_of_order(std::uint64_t q) {
  const auto pk = prime_power(q);
  if (!pk) throw Error(ErrorKind::NotPrime, std::to_string(q));
  return Field::make(pk->first, pk->second);
}

SearchOptions search_options(const RunConfig& c) {
  SearchOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  o.cap = c.cap;
  return o;
}

SpectralOptions spectral_options(const RunConfig& c) { return {c.tol, c.max_iter, c.seed, 0}; }

// Every Cayley recipe aims at generating its ambient group, so an ambient
// order above the cap is reported before enumeration can exhaust memory.
void cayley_into(BuiltRecipe& b, std::uint64_t cap) {
  if (b.set.ambient.order && *b.set.ambient.order > cap) {
    throw Error(ErrorKind::CapExceeded,
                "|" + b.set.ambient.name() + "| = " + std::to_string(*b.set.ambient.order) + " > " + std::to_string(cap));
  }
  CayleyGraph cay = build_cayley(b.set, cap);
  b.graph = std::move(cay.graph);
  b.group = std::move(cay.group);
}

}  // namespace

BuiltRecipe build_recipe(const RunConfig& c, std::uint64_t p) {
  BuiltRecipe b;
  b.recipe = c.recipe;
  if (c.recipe == "sl2-standard") {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
    b.params = {{"p", p}};
    b.set = sl2_standard(Field::make(p));
    cayley_into(b, c.cap);
  } else if (c.recipe == "torus-conj") {
    const FieldPtr base = field_of_order(p);
    const FieldPtr ambient = Field::make(base->characteristic(), base->degree() * c.k);
    b.params = {{"q", p}, {"k", c.k}, {"d", c.d}};
    const Torus H = nonsplit_torus(base, c.d);
    b.torus_order = H.order();
    ConjugatorSearch found = search_conjugator(H, ambient, search_options(c));
    b.search = {{"C", to_json(found)}};
    b.set = found.set;
    cayley_into(b, c.cap);
  } else if (c.recipe == "ros-sl2") {
    const FieldPtr q = field_of_order(p);
    b.params = {{"q", p}, {"m", c.m}};
    ExtensionGenerators ext = sl2_over_extension_plus_conjugator(q, c.m, search_options(c), search_options(c));
    b.search = {{"C", to_json(ext.c_search)}};
    if (ext.d_search) b.search["D"] = to_json(*ext.d_search);
    b.torus_order = ext.big_torus.order();
    b.set = std::move(ext.set);
    cayley_into(b, c.cap);
  } else if (c.recipe == "elementary") {
    b.params = {{"q", p}, {"d", c.d}};
    b.set = elementary_set(c.d, field_of_order(p));
    cayley_into(b, c.cap);
  } else if (c.recipe == "cube") {
    b.params = {{"k", c.k}, {"m", c.m}};
    const CubeSpec spec =
        c.m == 6 ? CubeSpec::full(c.k) : CubeSpec::reduced_spec((std::uint64_t{1} << (3 * c.k)) - 1, c.m);
    b.params["d"] = spec.d;
    b.params["n"] = spec.n;
    b.params["reduced"] = spec.reduced;
    auto [base, labels] = cube_base_action(c.k);
    CubeGenerators cube = cube_embeddings(spec, base, labels);
    std::vector<Permutation> perms;
    for (const auto& le : cube.set.elements) perms.push_back(le.element.perm());
    b.graph = build_schreier(perms);
    b.set = std::move(cube.set);
  } else if (c.recipe == "el3-power") {
    b.params = {{"k", c.k}, {"s", c.s}};
    b.set = power_generators(c.k, c.s);
    cayley_into(b, c.cap);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown recipe " + c.recipe);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool wants(const RunConfig& c, const std::string& cert) {
  return std::find(c.cert.begin(), c.cert.end(), cert) != c.cert.end();
}

Json graph_json(const SparseGraph& g) {
  return {{"kind", to_string(g.kind)}, {"n", g.n}, {"degree", g.degree}, {"connected", is_connected(g)}};
}

Json spectrum_json(const SparseGraph& g, const RunConfig& c, double& lambda2) {
  const SpectralReport r = lanczos_lambda2(g, spectral_options(c));
  lambda2 = r.lambda2;
  Json j = to_json(r);
  if (g.n <= 5000) {
    const double dense = dense_report(g).lambda2;
    j["dense_lambda2"] = dense;
    j["oracle_delta"] = std::abs(dense - r.lambda2);
  }
  return j;
}

const GroupElement& sample_element(const BuiltRecipe& b) {
  if (b.set.elements.empty()) throw Error(ErrorKind::InvalidArgument, "empty generating set");
  return b.set.elements.front().element;
}

}  // namespace

RunOutcome run(const RunConfig& c) {
  const auto start = Clock::now();
  RunOutcome out;
  if (c.p.empty()) throw Error(ErrorKind::InvalidArgument, "run needs one value of p");
  const BuiltRecipe b = build_recipe(c, c.p.front());

  Json rep;
  rep["forge_report"] = 1;
  rep["command"] = "run";
  rep["config"] = config_to_json(c);
  Json recipe{{"name", b.recipe}, {"params", b.params}, {"generating_set", generating_set_to_json(b.set)}};
  if (b.torus_order) recipe["torus_order"] = b.torus_order;
  if (!b.search.is_null()) recipe["search"] = b.search;
  rep["recipe"] = std::move(recipe);
  rep["graph"] = graph_json(b.graph);
  if (b.group) rep["graph"]["group_order"] = b.group->order();

  Json certs = Json::object();
  std::optional<double> lambda2;
  if (wants(c, "spectrum") || c.assert_lambda_below) {
    double l2 = 1.0;
    certs["spectrum"] = spectrum_json(b.graph, c, l2);
    lambda2 = l2;
  }
  if (wants(c, "expansion")) certs["expansion"] = to_json(expansion_exact(b.graph));
  if (wants(c, "diameter")) {
    const DiameterReport d = diameter(b.graph, c.seed);
    Json j = to_json(d);
    j["log2_bound"] = 3 * std::log2(static_cast<double>(b.graph.n));
    certs["diameter"] = std::move(j);
  }
  if (wants(c, "schreier")) {
    const GroupElement& g = sample_element(b);
    if (!g.is_matrix()) throw Error(ErrorKind::InvalidArgument, "schreier certification needs matrix generators");
    const NonzeroVectors dom{g.matrix().field, static_cast<unsigned>(g.matrix().dim)};
    const SparseGraph sg = build_schreier(b.set, dom);
    double l2 = 1.0;
    Json j = graph_json(sg);
    j["spectrum"] = spectrum_json(sg, c, l2);
    certs["schreier"] = std::move(j);
  }
  if (wants(c, "class-average")) {
    if (!b.group) throw Error(ErrorKind::InvalidArgument, "class-average needs a Cayley recipe");
    const GroupElement& g = sample_element(b);
    const auto spectrum = class_average_spectrum(*b.group, g);
    certs["class-average"] = {{"class_size", conjugacy_class(*b.group, g).size()},
                              {"distinct", spectrum.size()},
                              {"spectrum", to_json(spectrum)}};
  }
  if (wants(c, "decompose")) {
    const GroupElement& g = sample_element(b);
    if (!g.is_matrix()) throw Error(ErrorKind::InvalidArgument, "decompose certification needs SL_d(F_q)");
    certs["decompose"] =
        to_json(elementary_word_length_max(static_cast<unsigned>(g.matrix().dim), g.matrix().field));
  }
  rep["certifications"] = std::move(certs);

  if (c.assert_lambda_below) {
    const bool ok = *lambda2 < *c.assert_lambda_below;
    rep["assertions"] = {{"lambda_below", *c.assert_lambda_below}, {"passed", ok}};
    if (!ok) {
      out.exit_code = 2;
      out.message = "lambda2 = " + Json(*lambda2).dump() + " is not below " + Json(*c.assert_lambda_below).dump();
    }
  }
  if (!c.export_edges.empty()) export_edges(b.graph, c.export_edges);
  rep["timing"] = {{"runtime_ms", elapsed_ms(start)}};
  out.report = std::move(rep);
  return out;
}

RunOutcome decompose(const RunConfig& c) {
  const auto start = Clock::now();
  const auto target = split(c.target, ':');
  if (target.empty()) throw Error(ErrorKind::InvalidArgument, "decompose needs --target sl:<d>:<q> or alt:<n>");
  const auto fac = split(c.factors, ':');
  const std::string kind = fac.empty() ? "" : fac[0];
  DecompositionReport r;

  if (target[0] == "sl" && target.size() == 3) {
    const unsigned d = static_cast<unsigned>(parse_uint("d", target[1]));
    const FieldPtr f = field_of_order(parse_uint("q", target[2]));
    if (kind == "root-subgroups" || kind.empty()) {
      r = elementary_word_length_max(d, f);
    } else {
      const auto G = enumerate_group(elementary_set(d, f).group_elements(), kDecompositionCap);
      std::vector<Factor> factors;
      if (kind == "five-copies") {
        if (d != 3) throw Error(ErrorKind::InvalidArgument, "five-copies needs d = 3");
        factors = sl3_five_copies(f);
      } else if (kind == "blocks" && fac.size() == 2) {
        const unsigned k = static_cast<unsigned>(parse_uint("k", fac[1]));
        if (k < 2 || k >= d) throw Error(ErrorKind::InvalidArgument, "blocks:<k> needs 2 <= k < d");
        factors = {sl_block(f, d, 0, k), sl_block(f, d, d - k, k)};
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown factors " + c.factors);
      }
      r = product_cover_depth(G, GroupHandle::sl(d, f).name(), factors);
    }
  } else if (target[0] == "alt" && target.size() == 2) {
    const auto n = static_cast<std::uint32_t>(parse_uint("n", target[1]));
    if (kind != "windows" || fac.size() != 2) throw Error(ErrorKind::InvalidArgument, "alt targets need windows:<n_k>");
    r = alt_product_cover(n, default_windows(n, static_cast<std::uint32_t>(parse_uint("n_k", fac[1]))));
  } else {
    throw Error(ErrorKind::InvalidArgument, "bad target " + c.target);
  }

  RunOutcome out;
  out.report["forge_report"] = 1;
  out.report["command"] = "decompose";
  out.report["config"] = config_to_json(c);
  out.report["decomposition"] = to_json(r);
  out.report["timing"] = {{"runtime_ms", elapsed_ms(start)}};
  return out;
}

// ---------------------------------------------------------------------------
// Scan

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

// Shortest text that round-trips.
std::string fmt(double x) { return Json(x).dump(); }

std::string params_text(const Json& params) {
  std::string out;
  for (const auto& [key, v] : params.items()) {
    if (!out.empty()) out += ';';
    out += key + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

}  // namespace

std::string scan_csv(const RunConfig& c) {
  std::vector<std::string> rows(c.p.size());
  parallel_for(c.p.size(), 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto start = Clock::now();
      std::string params = "p=" + std::to_string(c.p[i]);
      std::string n, degree, lambda2, gap, diam, torus;
      std::string error;
      try {
        const BuiltRecipe b = build_recipe(c, c.p[i]);
        params = params_text(b.params);
        n = std::to_string(b.graph.n);
        degree = std::to_string(b.graph.degree);
        if (b.torus_order) torus = std::to_string(b.torus_order);
        if (wants(c, "spectrum")) {
          const SpectralReport r = lanczos_lambda2(b.graph, spectral_options(c));
          lambda2 = fmt(r.lambda2);
          gap = fmt(r.gap);
        }
        if (wants(c, "diameter")) diam = std::to_string(diameter(b.graph, c.seed).diameter);
      } catch (const std::exception& e) {
        error = e.what();
      }
      std::ostringstream row;
      row << csv_escape(c.recipe) << ',' << csv_escape(params) << ',' << n << ',' << degree << ',' << lambda2 << ','
          << gap << ',' << diam << ',' << torus << ',' << std::llround(elapsed_ms(start)) << ',' << c.seed << ','
          << csv_escape(error) << '\n';
      rows[i] = row.str();
    }
  });
  std::string out = "# forge-scan v1\nrecipe,params,n,degree,lambda2,gap,diameter,torus_order,runtime_ms,seed,error\n";
  for (const auto& r : rows) out += r;
  return out;
}

Json without_timing(Json report) {
  report.erase("timing");
  return report;
}

// ---------------------------------------------------------------------------
// Entry point

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, path);
  f << text;
  if (!f) throw Error(ErrorKind::IoError, path);
}

std::string run_csv(const RunConfig& c, const Json& report) {
  const Json& spec = report["certifications"].contains("spectrum") ? report["certifications"]["spectrum"] : Json();
  const Json& diam = report["certifications"].contains("diameter") ? report["certifications"]["diameter"] : Json();
  std::ostringstream row;
  row << "# forge-scan v1\nrecipe,params,n,degree,lambda2,gap,diameter,torus_order,runtime_ms,seed,error\n";
  row << csv_escape(c.recipe) << ',' << csv_escape(params_text(report["recipe"]["params"])) << ','
      << report["graph"]["n"].get<std::uint64_t>() << ',' << report["graph"]["degree"].get<std::uint64_t>() << ','
      << (spec.is_null() ? "" : fmt(spec["lambda2"].get<double>())) << ','
      << (spec.is_null() ? "" : fmt(spec["gap"].get<double>())) << ','
      << (diam.is_null() ? "" : std::to_string(diam["diameter"].get<std::uint64_t>())) << ','
      << (report["recipe"].contains("torus_order") ? report["recipe"]["torus_order"].dump() : "") << ','
      << std::llround(report["timing"]["runtime_ms"].get<double>()) << ',' << c.seed << ",\n";
  return row.str();
}

}  // namespace

int execute(const std::string& command, const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (command == "scan") {
      const std::string csv = scan_csv(c);
      if (c.csv.empty()) {
        out << csv;
      } else {
        write_file(c.csv, csv);
      }
      return 0;
    }
    RunOutcome r;
    if (command == "run") {
      r = run(c);
    } else if (command == "decompose") {
      r = decompose(c);
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown command " + command);
    }
    const std::string text = r.report.dump(2) + "\n";
    if (c.json.empty()) {
      out << text;
    } else {
      write_file(c.json, text);
    }
    if (command == "run" && !c.csv.empty()) write_file(c.csv, run_csv(c, r.report));
    if (!r.message.empty()) err << r.message << '\n';
    return r.exit_code;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
}

}  // namespace forge
