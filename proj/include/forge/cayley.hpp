#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "forge/gensets.hpp"

namespace forge {

enum class GraphKind { Cayley, Schreier };

const char* to_string(GraphKind kind);

/// Regular multigraph in CSR form. Row v lists one edge per generator slot,
/// in generator order; self-loops and repeated edges are kept.
struct SparseGraph {
  std::uint32_t n = 0;
  std::uint32_t degree = 0;
  GraphKind kind = GraphKind::Cayley;
  std::vector<std::uint32_t> offsets;  // n + 1
  std::vector<std::uint32_t> targets;  // n * degree
  std::vector<std::uint32_t> labels;   // generator index per edge

  std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  bool operator==(const SparseGraph&) const = default;
};

struct CayleyGraph {
  SparseGraph graph;
  Enumeration group;  // vertex v is group.elements[v]
};

/// Cay(<S>, S) with edges v -> s v. S is symmetrised first when needed.
/// Throws CapExceeded when <S> has more than `cap` elements.
CayleyGraph build_cayley(const GeneratingSet& S, std::uint64_t cap = kDefaultEnumerationCap);

/// Schreier graph of S acting on `domain`: edges x -> s.x. Vertex 0 is the
/// domain's base point.
SparseGraph build_schreier(const GeneratingSet& S, const PointDomain& domain);

/// Schreier graph from permutations of {0, ..., n-1}.
SparseGraph build_schreier(std::span<const Permutation> gens);

bool is_connected(const SparseGraph& g);
/// Edge multiset equals its reverse.
bool is_symmetric_multigraph(const SparseGraph& g);
/// BFS distances from `source` (UINT32_MAX when unreachable).
std::vector<std::uint32_t> bfs_distances(const SparseGraph& g, std::uint32_t source);
/// Vertices reachable from `source`, sorted.
std::vector<std::uint32_t> component_of(const SparseGraph& g, std::uint32_t source);

/// Text edge list: "# n=<n> degree=<deg> kind=<kind>" then "u\tv\tlabel" per
/// directed edge in CSR order.
void export_edges(const SparseGraph& g, const std::filesystem::path& path);
SparseGraph import_edges(const std::filesystem::path& path);

/// Binary cache: "XFRG", u32 version, n, degree, kind, then offsets, targets
/// and labels as little-endian u32 arrays.
void write_binary(const SparseGraph& g, const std::filesystem::path& path);
SparseGraph read_binary(const std::filesystem::path& path);

}  // namespace forge
