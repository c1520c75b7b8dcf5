#include "forge/cayley.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace forge {

const char* to_string(GraphKind kind) { return kind == GraphKind::Cayley ? "Cayley" : "Schreier"; }

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

SparseGraph make_graph(std::uint64_t n, std::size_t degree, GraphKind kind) {
  if (n == 0 || n > 0x7fffffffull || n * degree > 0xffffffffull) {
    throw Error(ErrorKind::TooLarge, "graph with " + std::to_string(n) + " vertices");
  }
  SparseGraph g;
  g.n = static_cast<std::uint32_t>(n);
  g.degree = static_cast<std::uint32_t>(degree);
  g.kind = kind;
  g.offsets.resize(n + 1);
  for (std::uint64_t v = 0; v <= n; ++v) g.offsets[v] = static_cast<std::uint32_t>(v * degree);
  g.targets.resize(n * degree);
  g.labels.resize(n * degree);
  return g;
}

void check_regular(const SparseGraph& g) {
  for (std::uint32_t v = 0; v < g.n; ++v) {
    if (g.offsets[v + 1] - g.offsets[v] != g.degree) {
      throw Error(ErrorKind::InvalidArgument, "graph is not regular at vertex " + std::to_string(v));
    }
  }
}

}  // namespace

CayleyGraph build_cayley(const GeneratingSet& S, std::uint64_t cap) {
  const GeneratingSet sym = S.symmetric ? S : symmetric_closure(S);
  const auto gens = sym.group_elements();
  CayleyGraph out{{}, enumerate_group(gens, cap)};
  const auto& G = out.group;
  SparseGraph g = make_graph(G.order(), gens.size(), GraphKind::Cayley);
  for (std::uint32_t v = 0; v < g.n; ++v) {
    for (std::uint32_t s = 0; s < gens.size(); ++s) {
      const std::size_t e = g.offsets[v] + s;
      g.targets[e] = G.at(compose(gens[s], G.elements[v]));
      g.labels[e] = s;
    }
  }
  check_regular(g);
  out.graph = std::move(g);
  return out;
}

SparseGraph build_schreier(const GeneratingSet& S, const PointDomain& domain) {
  const GeneratingSet sym = S.symmetric ? S : symmetric_closure(S);
  std::vector<Permutation> perms;
  perms.reserve(sym.size());
  for (const auto& le : sym.elements) perms.push_back(act_on_points(le.element, domain));
  return build_schreier(perms);
}

SparseGraph build_schreier(std::span<const Permutation> gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "no generators");
  const std::uint32_t n = gens.front().size();
  for (const auto& p : gens) {
    if (p.size() != n) throw Error(ErrorKind::NotAnAction, "generators act on different point sets");
  }
  SparseGraph g = make_graph(n, gens.size(), GraphKind::Schreier);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t s = 0; s < gens.size(); ++s) {
      const std::size_t e = g.offsets[v] + s;
      g.targets[e] = gens[s](v);
      g.labels[e] = s;
    }
  }
  check_regular(g);
  return g;
}

std::vector<std::uint32_t> bfs_distances(const SparseGraph& g, std::uint32_t source) {
  std::vector<std::uint32_t> dist(g.n, kUnreached);
  std::vector<std::uint32_t> queue;
  queue.reserve(g.n);
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::uint32_t v = queue[i];
    for (std::uint32_t w : g.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> component_of(const SparseGraph& g, std::uint32_t source) {
  const auto dist = bfs_distances(g, source);
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < g.n; ++v)
    if (dist[v] != kUnreached) out.push_back(v);
  return out;
}

bool is_connected(const SparseGraph& g) {
  if (g.n == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == kUnreached; });
}

bool is_symmetric_multigraph(const SparseGraph& g) {
  std::vector<std::uint64_t> fwd, rev;
  fwd.reserve(g.targets.size());
  rev.reserve(g.targets.size());
  for (std::uint32_t v = 0; v < g.n; ++v) {
    for (std::uint32_t w : g.neighbors(v)) {
      fwd.push_back((static_cast<std::uint64_t>(v) << 32) | w);
      rev.push_back((static_cast<std::uint64_t>(w) << 32) | v);
    }
  }
  std::sort(fwd.begin(), fwd.end());
  std::sort(rev.begin(), rev.end());
  return fwd == rev;
}

// ---------------------------------------------------------------------------
// I/O

void export_edges(const SparseGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, path.string());
  out << "# n=" << g.n << " degree=" << g.degree << " kind=" << to_string(g.kind) << '\n';
  for (std::uint32_t v = 0; v < g.n; ++v) {
    for (std::uint32_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      out << v << '\t' << g.targets[e] << '\t' << g.labels[e] << '\n';
    }
  }
  if (!out) throw Error(ErrorKind::IoError, path.string());
}

SparseGraph import_edges(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, path.string());
  std::string header;
  std::getline(in, header);
  std::uint64_t n = 0, degree = 0;
  std::string kind;
  {
    std::istringstream hs(header);
    std::string hash, nf, df, kf;
    hs >> hash >> nf >> df >> kf;
    if (hash != "#" || nf.rfind("n=", 0) != 0 || df.rfind("degree=", 0) != 0 || kf.rfind("kind=", 0) != 0) {
      throw Error(ErrorKind::IoError, "bad edge-list header");
    }
    n = std::stoull(nf.substr(2));
    degree = std::stoull(df.substr(7));
    kind = kf.substr(5);
  }
  SparseGraph g = make_graph(n, degree, kind == "Cayley" ? GraphKind::Cayley : GraphKind::Schreier);
  std::vector<std::uint32_t> fill(n, 0);
  std::uint64_t u, v, label;
  std::size_t count = 0;
  while (in >> u >> v >> label) {
    if (u >= n || v >= n || fill[u] >= degree) throw Error(ErrorKind::IoError, "edge out of range");
    const std::size_t e = g.offsets[u] + fill[u]++;
    g.targets[e] = static_cast<std::uint32_t>(v);
    g.labels[e] = static_cast<std::uint32_t>(label);
    ++count;
  }
  if (count != n * degree) throw Error(ErrorKind::IoError, "edge count mismatch");
  return g;
}

namespace {

constexpr std::uint32_t kBinaryVersion = 1;

void put_u32(std::ostream& out, std::uint32_t x) {
  const char b[4] = {static_cast<char>(x & 0xff), static_cast<char>((x >> 8) & 0xff),
                     static_cast<char>((x >> 16) & 0xff), static_cast<char>((x >> 24) & 0xff)};
  out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw Error(ErrorKind::IoError, "truncated graph cache");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_binary(const SparseGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, path.string());
  out.write("XFRG", 4);
  put_u32(out, kBinaryVersion);
  put_u32(out, g.n);
  put_u32(out, g.degree);
  put_u32(out, g.kind == GraphKind::Cayley ? 0 : 1);
  for (auto x : g.offsets) put_u32(out, x);
  for (auto x : g.targets) put_u32(out, x);
  for (auto x : g.labels) put_u32(out, x);
  if (!out) throw Error(ErrorKind::IoError, path.string());
}

SparseGraph read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::string(magic, 4) != "XFRG") throw Error(ErrorKind::IoError, "bad magic");
  if (get_u32(in) != kBinaryVersion) throw Error(ErrorKind::IoError, "unsupported cache version");
  const std::uint32_t n = get_u32(in);
  const std::uint32_t degree = get_u32(in);
  const std::uint32_t kind = get_u32(in);
  SparseGraph g = make_graph(n, degree, kind == 0 ? GraphKind::Cayley : GraphKind::Schreier);
  for (auto& x : g.offsets) x = get_u32(in);
  for (auto& x : g.targets) x = get_u32(in);
  for (auto& x : g.labels) x = get_u32(in);
  check_regular(g);
  return g;
}

}  // namespace forge
