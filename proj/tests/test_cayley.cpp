#include <filesystem>

#include "doctest.h"
#include "forge/cayley.hpp"

using namespace forge;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("forge_test_" + name);
}

}  // namespace

TEST_CASE("sl2_standard sizes") {
  // over F_2 both A and B are involutions
  CHECK(sl2_standard(Field::make(2)).size() == 2);
  CHECK(sl2_standard(Field::make(5)).size() == 4);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const auto s = sl2_standard(Field::make(p));
    CHECK(s.symmetric);
    CHECK(enumerate_group(s.group_elements()).order() == p * (p * p - 1));
  }
}

TEST_CASE("Cayley graph of SL_2(F_5)") {
  const auto S = sl2_standard(Field::make(5));
  const auto cay = build_cayley(S);
  const auto& g = cay.graph;
  CHECK(g.n == 120);
  CHECK(g.degree == 4);
  CHECK(g.kind == GraphKind::Cayley);
  CHECK(is_connected(g));
  CHECK(is_symmetric_multigraph(g));
  const auto gens = S.group_elements();
  for (std::uint32_t v = 0; v < g.n; ++v) {
    for (std::uint32_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      REQUIRE(cay.group.elements[g.targets[e]] == compose(gens[g.labels[e]], cay.group.elements[v]));
    }
  }
}

TEST_CASE("non-symmetric sets are closed before building") {
  auto f3 = Field::make(3);
  FieldMatrix a = FieldMatrix::identity(f3, 2);
  a(0, 1) = 1;
  FieldMatrix b = FieldMatrix::identity(f3, 2);
  b(1, 0) = 1;
  GeneratingSet s{GroupHandle::sl(2, f3), {{"a", a}, {"b", b}}, false};
  const auto cay = build_cayley(s);
  CHECK(cay.graph.degree == 4);
  CHECK(cay.graph.n == 24);
  CHECK(is_symmetric_multigraph(cay.graph));
}

TEST_CASE("self-loops and multi-edges are kept") {
  GeneratingSet s{GroupHandle::alt(3), {{"id", Permutation::identity(3)}, {"c", Permutation::from_cycles(3, {{0, 1, 2}})}},
                  false};
  const auto cay = build_cayley(s);
  CHECK(cay.graph.n == 3);
  CHECK(cay.graph.degree == 3);
  for (std::uint32_t v = 0; v < 3; ++v) CHECK(cay.graph.neighbors(v)[0] == v);
}

TEST_CASE("Schreier graphs") {
  auto f5 = Field::make(5);
  const auto g = build_schreier(sl2_standard(f5), NonzeroVectors{f5, 2});
  CHECK(g.n == 24);
  CHECK(g.kind == GraphKind::Schreier);
  CHECK(is_connected(g));
  CHECK(is_symmetric_multigraph(g));

  const std::vector<Permutation> split{Permutation::from_cycles(6, {{0, 1, 2}}),
                                       Permutation::from_cycles(6, {{0, 2, 1}})};
  const auto h = build_schreier(split);
  CHECK_FALSE(is_connected(h));
  CHECK(component_of(h, 4) == std::vector<std::uint32_t>{4});
  CHECK(component_of(h, 1) == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("edge list and binary cache round trip") {
  const auto g = build_cayley(sl2_standard(Field::make(7))).graph;
  const auto text = temp_file("edges.tsv");
  const auto bin = temp_file("graph.bin");
  export_edges(g, text);
  CHECK(import_edges(text) == g);
  write_binary(g, bin);
  CHECK(read_binary(bin) == g);
  std::filesystem::remove(text);
  std::filesystem::remove(bin);

  CHECK_THROWS_AS(read_binary(temp_file("missing.bin")), Error);
}
