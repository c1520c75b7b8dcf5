// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "forge/pipeline.hpp"

using namespace forge;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Built {
  std::string name;
  SparseGraph graph;
};

std::string num(double x) {
  std::ostringstream o;
  o.precision(6);
  o << x;
  return o.str();
}

RunConfig recipe(const std::string& name, unsigned k = 1, unsigned d = 2, unsigned m = 1, unsigned s = 1) {
  RunConfig c;
  c.recipe = name;
  c.k = k;
  c.d = d;
  c.m = m;
  c.s = s;
  c.trials = 20;
  return c;
}

// Every recipe, plus Schreier graphs on nonzero vectors.
std::vector<Built> corpus() {
  std::vector<Built> out;
  auto add = [&](const RunConfig& c, std::uint64_t p) {
    BuiltRecipe b = build_recipe(c, p);
    out.push_back({c.recipe + " " + b.params.dump(), std::move(b.graph)});
  };
  for (std::uint64_t p : {3, 5, 7, 11, 13}) add(recipe("sl2-standard"), p);
  for (std::uint64_t q : {2, 3, 4, 5, 7}) add(recipe("torus-conj"), q);
  add(recipe("torus-conj", 2), 3);
  for (std::uint64_t q : {2, 3}) add(recipe("ros-sl2"), q);
  add(recipe("elementary", 1, 2), 2);
  add(recipe("elementary", 1, 2), 4);
  add(recipe("elementary", 1, 3), 2);
  add(recipe("elementary", 1, 2), 8);
  for (unsigned m : {1u, 2u, 3u, 4u}) add(recipe("cube", 1, 2, m), 0);
  add(recipe("el3-power", 1, 2, 1, 1), 0);
  for (std::uint64_t p : {3, 5}) {
    const auto f = Field::make(p);
    out.push_back({"schreier F_" + std::to_string(p) + "^2", build_schreier(sl2_standard(f), NonzeroVectors{f, 2})});
  }
  out.push_back({"schreier F_2^3", build_schreier(elementary_set(3, Field::make(2)), NonzeroVectors{Field::make(2), 3})});
  return out;
}

Verdict oracle_equivalence(const std::vector<Built>& graphs) {
  double worst = 0;
  std::size_t used = 0;
  std::vector<std::string> recipes;
  for (const auto& b : graphs) {
    if (b.graph.n > 5000) continue;
    ++used;
    const double lz = lanczos_lambda2(b.graph).lambda2;
    const double dn = dense_report(b.graph).lambda2;
    worst = std::max(worst, std::abs(lz - dn));
  }
  for (const char* r : kRecipes) {
    bool seen = false;
    for (const auto& b : graphs) seen = seen || b.name.rfind(std::string(r) + " ", 0) == 0;
    if (!seen) recipes.push_back(r);
  }
  const bool ok = used >= 12 && recipes.empty() && worst <= 1e-8;
  return {ok, std::to_string(used) + " graphs with n <= 5000, max |dlambda2| = " + num(worst) +
                  (recipes.empty() ? "" : ", missing recipe " + recipes.front())};
}

Verdict sl2_family_gap() {
  double worst = 1;
  std::string detail;
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    const auto g = build_cayley(sl2_standard(Field::make(p))).graph;
    const double l2 = dense_report(g).lambda2;
    worst = std::min(worst, 1 - l2);
    detail += "p=" + std::to_string(p) + ":" + num(l2) + " ";
  }
  return {worst >= 0.05, detail + "min gap " + num(worst)};
}

Verdict torus_threshold() {
  bool ok = true;
  std::string detail;
  SearchOptions opts;
  opts.trials = 200;
  opts.seed = 1;
  for (auto [p, k] : {std::pair{3u, 1u}, {3u, 2u}, {5u, 1u}}) {
    const auto base = Field::make(p);
    const ConjugatorSearch s = search_conjugator(nonsplit_torus(base, 2), Field::make(p, k), opts);
    ok = ok && s.generates && s.below_threshold;
    detail += "(" + std::to_string(p) + "," + std::to_string(k) + "): " + num(s.lambda2) +
              (s.ramanujan ? " ramanujan" : " not-ramanujan") + "; ";
  }
  // Same search against the order-10 torus of SL_2(F_9) itself (informational).
  const auto f9 = Field::make(3, 2);
  const ConjugatorSearch big = search_conjugator(nonsplit_torus(f9, 2), f9, opts);
  detail += "F_9 order-10 torus: " + num(big.lambda2) + " (informational)";
  return {ok, detail};
}

Verdict torus_orders() {
  bool ok = true;
  std::string detail;
  for (auto [q, d] : {std::pair{2u, 2u}, {3u, 2u}, {4u, 2u}, {5u, 2u}, {2u, 3u}}) {
    const auto [p, k] = *prime_power(q);
    const std::size_t got = nonsplit_torus(Field::make(p, k), d).order();
    std::uint64_t expect = 0, qi = 1;
    for (unsigned i = 0; i < d; ++i, qi *= q) expect += qi;
    ok = ok && got == expect;
    detail += std::to_string(got) + "/" + std::to_string(expect) + " ";
  }
  return {ok, detail};
}

Verdict cheeger(const std::vector<Built>& graphs) {
  bool ok = true;
  std::size_t used = 0;
  std::string bad;
  for (const auto& b : graphs) {
    if (b.graph.n > kExactLimit) continue;
    ++used;
    const double gap = 1 - dense_report(b.graph).lambda2;
    const double h = expansion_exact(b.graph).h_edge;
    const bool fine = gap / 2 <= h + 1e-12 && h <= std::sqrt(2 * gap) + 1e-12;
    if (!fine) bad += " " + b.name;
    ok = ok && fine;
  }
  return {ok && used > 0, std::to_string(used) + " graphs with n <= 24" + (bad.empty() ? "" : ", violated by" + bad)};
}

Verdict restriction_of_scalars_check() {
  const auto f2 = Field::make(2);
  const auto f4 = Field::make(2, 2);
  const Enumeration G = enumerate_group(elementary_set(2, f4).group_elements());
  std::vector<GroupElement> img;
  for (const auto& g : G.elements) img.push_back(restriction_of_scalars(g, f2));
  std::size_t checks = 0, bad = 0;
  for (std::size_t a = 0; a < G.elements.size(); ++a) {
    for (std::size_t b = 0; b < G.elements.size(); ++b) {
      ++checks;
      const GroupElement lhs = restriction_of_scalars(compose(G.elements[a], G.elements[b]), f2);
      if (!(lhs == compose(img[a], img[b]))) ++bad;
    }
  }
  std::size_t collisions = 0;
  for (std::size_t a = 0; a < img.size(); ++a)
    for (std::size_t b = a + 1; b < img.size(); ++b) collisions += img[a] == img[b];

  SearchOptions opts;
  opts.trials = 40;
  const ExtensionGenerators ext = sl2_over_extension_plus_conjugator(f2, 2, opts, opts);
  const std::uint64_t order = enumerate_group(ext.set.group_elements()).order();
  const bool ok = G.order() == 60 && checks == 3600 && bad == 0 && collisions == 0 && order == 20160;
  return {ok, "|SL_2(F_4)| = " + std::to_string(G.order()) + ", " + std::to_string(checks) + " products, " +
                  std::to_string(bad) + " mismatches, " + std::to_string(collisions) +
                  " collisions; |<rho(A), rho(B), rho(C), D>| = " + std::to_string(order)};
}

Verdict elementary_generation() {
  std::vector<std::uint32_t> len;
  std::string detail;
  for (std::uint64_t q : {2, 3, 5}) {
    len.push_back(elementary_word_length_max(3, Field::make(q)).max_word_length);
    detail += "q=" + std::to_string(q) + ":" + std::to_string(len.back()) + " ";
  }
  const bool bounded = len[0] <= 40 && len[1] <= 40 && len[2] <= 40;
  const bool monotone = len[0] < len[1] && len[1] < len[2];
  detail += monotone ? "(grows monotonically) " : "(no monotone growth) ";
  detail += "q=4:" + std::to_string(elementary_word_length_max(3, Field::make(2, 2)).max_word_length) +
            " (informational); ";

  const auto f7 = Field::make(7);
  std::mt19937_64 rng(7);
  std::size_t ok_trips = 0, max_len = 0;
  for (int t = 0; t < 10000; ++t) {
    const FieldMatrix g = random_special_linear(f7, 3, rng);
    const auto word = reduction_writer(g);
    max_len = std::max(max_len, word.size());
    ok_trips += recompose(word, f7, 3) == g;
  }
  detail += std::to_string(ok_trips) + "/10000 SL_3(F_7) round trips, longest word " + std::to_string(max_len);
  return {bounded && !monotone && ok_trips == 10000, detail};
}

Verdict odd_product() {
  const auto f2 = Field::make(2);
  const Enumeration G = enumerate_group(elementary_set(3, f2).group_elements());
  const DecompositionReport r = product_cover_depth(G, "SL_3(F_2)", sl3_five_copies(f2));
  return {r.depth <= 5, "depth " + std::to_string(r.depth) + " with " + std::to_string(r.factors.size()) + " factors"};
}

Verdict diameter_law(const std::vector<Built>& graphs) {
  std::vector<Built> cayley;
  for (const auto& b : graphs)
    if (b.graph.kind == GraphKind::Cayley) cayley.push_back({b.name, b.graph});
  RunConfig ros = recipe("ros-sl2", 1, 2, 2);
  ros.trials = 4;
  cayley.push_back({"ros-sl2 q=2 m=2", build_recipe(ros, 2).graph});
  cayley.push_back({"el3-power k=1 s=2", build_recipe(recipe("el3-power", 1, 2, 1, 2), 0).graph});
  cayley.push_back({"elementary d=3 q=3", build_recipe(recipe("elementary", 1, 3), 3).graph});
  bool ok = true;
  double worst = 0;
  std::size_t used = 0;
  for (const auto& b : cayley) {
    if (b.graph.n > 100000 || b.graph.n < 2) continue;
    ++used;
    const double ratio = diameter(b.graph).diameter / std::log2(static_cast<double>(b.graph.n));
    worst = std::max(worst, ratio);
    ok = ok && ratio <= 3;
  }
  return {ok, std::to_string(used) + " Cayley graphs, max diameter/log2(n) = " + num(worst)};
}

Verdict cube_full_scale() {
  const auto start = std::chrono::steady_clock::now();
  auto [base, labels] = cube_base_action(1);
  const CubeGenerators cube = cube_embeddings(CubeSpec::full(1), base, labels);
  std::vector<Permutation> perms;
  for (const auto& le : cube.set.elements) perms.push_back(le.element.perm());
  const SparseGraph g = build_schreier(perms);
  const bool connected = is_connected(g);
  const SpectralReport r = lanczos_lambda2(g);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Oracle: the cube graph is the Cartesian product of six copies of the base
  // Schreier graph, so lambda2 = (5 + mu2) / 6 and lambda_min = mu_min.
  const auto mu = dense_spectrum(build_schreier(base));
  const double expect2 = (5 + mu[1]) / 6, expect_min = mu.back();
  const double delta = std::max(std::abs(r.lambda2 - expect2), std::abs(r.lambda_min - expect_min));
  const bool ok = g.n == 117649 && connected && r.lambda2 < 1 - 1e-3 && r.residual <= 1e-6 && secs <= 600 &&
                  delta <= 1e-8;
  return {ok, "n = " + std::to_string(g.n) + ", degree " + std::to_string(g.degree) + ", lambda2 = " + num(r.lambda2) +
                  ", residual " + num(r.residual) + ", product oracle delta " + num(delta) + ", " + num(secs) + " s"};
}

Verdict class_average() {
  bool ok = true;
  std::string detail;
  const Permutation t = Permutation::from_cycles(3, {{0, 1}});
  const Permutation c3 = Permutation::from_cycles(3, {{0, 1, 2}});
  const std::vector<GroupElement> s3_gens{t, c3};
  const Enumeration S3 = enumerate_group(s3_gens);
  const auto spec = class_average_spectrum(S3, t);
  const std::vector<std::pair<double, std::size_t>> expect{{1, 1}, {0, 4}, {-1, 1}};
  bool s3_ok = spec.size() == expect.size();
  for (std::size_t i = 0; s3_ok && i < spec.size(); ++i)
    s3_ok = std::abs(spec[i].value - expect[i].first) <= 1e-10 && spec[i].multiplicity == expect[i].second;
  ok = ok && s3_ok;
  detail += s3_ok ? "Sym(3) {1, 0x4, -1}; " : "Sym(3) spectrum wrong; ";

  const std::vector<GroupElement> a5_gens{Permutation::from_cycles(5, {{0, 1, 2}}),
                                          Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})};
  const Enumeration A5 = enumerate_group(a5_gens);
  const Enumeration SL23 = enumerate_group(sl2_standard(Field::make(3)).group_elements());
  bool ident = true;
  for (const Enumeration* G : {&S3, &A5, &SL23}) {
    const auto e = class_average_spectrum(*G, G->elements[0]);
    ident = ident && e.size() == 1 && std::abs(e[0].value - 1) <= 1e-10 && e[0].multiplicity == G->order();
  }
  ok = ok && ident;
  detail += ident ? "identity class all ones on 3 groups; " : "identity class not all ones; ";

  const auto five = class_average_spectrum(A5, a5_gens[1]);
  ok = ok && five.size() <= 5;
  detail += "Alt(5) 5-cycle class: " + std::to_string(five.size()) + " distinct eigenvalues";
  return {ok, detail};
}

Verdict determinism() {
  std::vector<RunConfig> configs;
  RunConfig a = recipe("sl2-standard");
  a.p = {11};
  a.cert = {"spectrum", "diameter", "class-average"};
  RunConfig b = recipe("torus-conj", 2);
  b.p = {3};
  RunConfig c = recipe("cube", 1, 2, 4);
  c.p = {0};
  c.cert = {"spectrum", "diameter"};
  RunConfig d = recipe("ros-sl2", 1, 2, 2);
  d.p = {2};
  d.trials = 3;
  configs = {a, b, c, d};

  std::vector<std::string> reports[2];
  const char* threads[2] = {"1", "4"};
  for (int t = 0; t < 2; ++t) {
    setenv("FORGE_THREADS", threads[t], 1);
    for (const auto& cfg : configs) {
      reports[t].push_back(without_timing(run(cfg).report).dump());
      reports[t].push_back(without_timing(run(cfg).report).dump());
    }
  }
  unsetenv("FORGE_THREADS");
  bool ok = true;
  for (std::size_t i = 0; i < reports[0].size(); ++i) ok = ok && reports[0][i] == reports[1][i] && reports[0][i] == reports[0][i ^ 1];
  return {ok, std::to_string(configs.size()) + " configs, 2 runs each under FORGE_THREADS 1 and 4"};
}

}  // namespace

int main() {
  std::vector<Built> graphs;
  try {
    graphs = corpus();
  } catch (const std::exception& e) {
    std::printf("corpus construction failed: %s\n", e.what());
    return 1;
  }
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence", [&] { return oracle_equivalence(graphs); }},
      {"SL_2 standard family gap", sl2_family_gap},
      {"torus-conjugate threshold", torus_threshold},
      {"torus orders", torus_orders},
      {"Cheeger consistency", [&] { return cheeger(graphs); }},
      {"restriction of scalars", restriction_of_scalars_check},
      {"bounded elementary generation", elementary_generation},
      {"odd-d product cover", odd_product},
      {"diameter law", [&] { return diameter_law(graphs); }},
      {"cube Schreier graph at n = 7^6", cube_full_scale},
      {"class-average operator", class_average},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
