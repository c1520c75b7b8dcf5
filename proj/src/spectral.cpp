#include "forge/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "forge/parallel.hpp"

namespace forge {

const char* to_string(SpectralMethod m) { return m == SpectralMethod::Dense ? "dense" : "lanczos"; }

namespace {

void require_symmetric(const SparseGraph& g) {
  if (!is_symmetric_multigraph(g)) throw Error(ErrorKind::NotSymmetric, "adjacency is not symmetric");
}

}  // namespace

void apply_normalized(const SparseGraph& g, const double* x, double* y) {
  const double scale = 1.0 / g.degree;
  parallel_for(g.n, 4096, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      double s = 0.0;
      for (std::uint32_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) s += x[g.targets[e]];
      y[v] = s * scale;
    }
  });
}

std::vector<double> dense_spectrum(const SparseGraph& g) {
  if (g.n > kDenseLimit) throw Error(ErrorKind::TooLargeForDense, "n=" + std::to_string(g.n));
  require_symmetric(g);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(g.n, g.n);
  const double w = 1.0 / g.degree;
  for (std::uint32_t v = 0; v < g.n; ++v)
    for (std::uint32_t u : g.neighbors(v)) d(v, u) += w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + g.n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

SpectralReport dense_report(const SparseGraph& g) {
  const auto ev = dense_spectrum(g);
  SpectralReport r;
  r.n = g.n;
  r.degree = g.degree;
  r.lambda2 = ev.size() > 1 ? ev[1] : ev[0];
  r.lambda_min = ev.back();
  r.gap = 1.0 - r.lambda2;
  r.method = SpectralMethod::Dense;
  return r;
}

// ---------------------------------------------------------------------------
// Thick-restart Lanczos. The basis V is kept orthonormal by two passes of
// classical Gram-Schmidt and W = D V is stored next to it, so the projected
// matrix H = V^T W is exact for any restart pattern.

namespace {

struct RitzPair {
  double theta = 0.0;
  double residual = 0.0;
  unsigned matvecs = 0;
};

class ExtremeSolver {
 public:
  ExtremeSolver(const SparseGraph& g, bool largest, const SpectralOptions& opts, std::mt19937_64& rng)
      : g_(g), largest_(largest), opts_(opts), rng_(rng), n_(g.n), dim_(g.n - 1) {
    auto m = static_cast<Eigen::Index>(opts.krylov_dim);
    if (m == 0) {
      const Eigen::Index budget = (Eigen::Index{512} << 20) / (16 * n_);
      m = std::clamp<Eigen::Index>(budget, 8, 64);
    }
    m_ = std::min(m, dim_);
    V_.resize(n_, m_);
    W_.resize(n_, m_);
    H_ = Eigen::MatrixXd::Zero(m_, m_);
  }

  RitzPair solve() {
    append(random_vector());
    for (;;) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H_.topLeftCorner(j_, j_));
      const Eigen::Index pick = largest_ ? j_ - 1 : 0;
      const double theta = es.eigenvalues()(pick);
      const Eigen::VectorXd u = es.eigenvectors().col(pick);
      Eigen::VectorXd x = V_.leftCols(j_) * u;
      Eigen::VectorXd r = W_.leftCols(j_) * u - theta * x;
      const double res = r.norm();

      if (j_ == dim_) return {theta, res, matvecs_};
      if (res <= opts_.tol) {
        const double true_res = true_residual(x, theta);
        if (true_res <= opts_.tol) return {theta, true_res, matvecs_};
        j_ = 0;  // drift: rebuild from the Ritz vector
        append(x);
        continue;
      }
      if (matvecs_ >= opts_.max_iter) {
        throw Error(ErrorKind::NoConvergence, std::to_string(opts_.max_iter));
      }
      if (j_ == m_) restart(es);
      if (!append(r) && !append(random_vector())) return {theta, res, matvecs_};
    }
  }

 private:
  void deflate(Eigen::VectorXd& v) const { v.array() -= v.sum() / static_cast<double>(n_); }

  Eigen::VectorXd random_vector() {
    Eigen::VectorXd v(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      v(i) = static_cast<double>(rng_() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    }
    return v;
  }

  // Orthonormalizes t against the constant vector and V, appends it and its
  // image. Returns false when t is numerically inside the current span.
  bool append(Eigen::VectorXd t) {
    if (j_ >= m_) return false;
    deflate(t);
    const double before = t.norm();
    if (before == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (j_ > 0) t -= V_.leftCols(j_) * (V_.leftCols(j_).transpose() * t);
      deflate(t);
    }
    const double after = t.norm();
    if (after <= 1e-8 * before) return false;
    V_.col(j_) = t / after;
    Eigen::VectorXd y(n_);
    apply_normalized(g_, V_.col(j_).data(), y.data());
    deflate(y);
    W_.col(j_) = y;
    ++matvecs_;
    const Eigen::Index j = j_;
    const Eigen::VectorXd a = V_.leftCols(j + 1).transpose() * W_.col(j);
    const Eigen::VectorXd b = W_.leftCols(j + 1).transpose() * V_.col(j);
    for (Eigen::Index i = 0; i <= j; ++i) H_(i, j) = H_(j, i) = 0.5 * (a(i) + b(i));
    ++j_;
    return true;
  }

  void restart(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
    const Eigen::Index keep = std::max<Eigen::Index>(1, m_ / 2);
    const Eigen::Index first = largest_ ? j_ - keep : 0;
    const Eigen::MatrixXd U = es.eigenvectors().middleCols(first, keep);
    const Eigen::MatrixXd v = V_.leftCols(j_) * U;
    const Eigen::MatrixXd w = W_.leftCols(j_) * U;
    V_.leftCols(keep) = v;
    W_.leftCols(keep) = w;
    H_.setZero();
    H_.topLeftCorner(keep, keep) = 0.5 * (v.transpose() * w + w.transpose() * v);
    j_ = keep;
  }

  double true_residual(const Eigen::VectorXd& x, double theta) {
    Eigen::VectorXd y(n_);
    apply_normalized(g_, x.data(), y.data());
    ++matvecs_;
    return (y - theta * x).norm() / x.norm();
  }

  const SparseGraph& g_;
  bool largest_;
  const SpectralOptions& opts_;
  std::mt19937_64& rng_;
  Eigen::Index n_;
  Eigen::Index dim_;
  Eigen::Index m_ = 0;
  Eigen::Index j_ = 0;
  Eigen::MatrixXd V_, W_, H_;
  unsigned matvecs_ = 0;
};

}  // namespace

SpectralReport lanczos_lambda2(const SparseGraph& g, const SpectralOptions& opts) {
  if (g.n == 0) throw Error(ErrorKind::InvalidArgument, "empty graph");
  if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "n=" + std::to_string(g.n));
  require_symmetric(g);

  SpectralReport r;
  r.n = g.n;
  r.degree = g.degree;
  r.method = SpectralMethod::Lanczos;
  r.tol = opts.tol;
  r.seed = opts.seed;
  if (g.n == 1) return r;

  std::mt19937_64 rng(opts.seed);
  const RitzPair top = ExtremeSolver(g, true, opts, rng).solve();
  const RitzPair bottom = ExtremeSolver(g, false, opts, rng).solve();
  r.lambda2 = top.theta;
  r.lambda_min = bottom.theta;
  r.gap = 1.0 - r.lambda2;
  r.residual = std::max(top.residual, bottom.residual);
  r.iterations = top.matvecs + bottom.matvecs;
  return r;
}

// ---------------------------------------------------------------------------
// Exact expansion

namespace {

// Lexicographic order of the sorted vertex lists of two distinct masks.
bool lex_less(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t low = (a ^ b) & (~(a ^ b) + 1);
  const std::uint32_t above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

std::vector<std::uint32_t> mask_vertices(std::uint32_t mask) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) out.push_back(v);
  return out;
}

}  // namespace

ExpansionReport expansion_exact(const SparseGraph& g, std::optional<std::uint32_t> must_contain) {
  if (g.n > kExactLimit) throw Error(ErrorKind::TooLargeForExact, "n=" + std::to_string(g.n));
  if (g.n < 2) throw Error(ErrorKind::InvalidArgument, "expansion needs at least two vertices");
  const std::uint32_t n = g.n;
  const std::uint32_t half = n / 2;

  std::vector<std::uint32_t> adj(n, 0), loops(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint32_t u : g.neighbors(v)) {
      adj[v] |= 1u << u;
      if (u == v) ++loops[v];
    }
  }

  const std::size_t count = std::size_t{1} << n;
  std::vector<std::uint32_t> cut(count, 0), nb(count, 0);
  std::uint32_t best_vm = 0, best_em = 0;
  std::uint64_t best_vnum = 0, best_enum = 0, best_vden = 1, best_eden = 1;
  for (std::uint32_t a = 1; a < count; ++a) {
    const unsigned size = std::popcount(a);
    if (size > half) continue;
    const std::uint32_t vbit = a & (~a + 1);
    const std::uint32_t v = std::countr_zero(a);
    const std::uint32_t b = a ^ vbit;
    std::uint32_t into_b = 0;
    for (std::uint32_t u : g.neighbors(v)) into_b += (b >> u) & 1u;
    cut[a] = cut[b] + g.degree - loops[v] - 2 * into_b;
    nb[a] = nb[b] | adj[v];
    if (must_contain && !((a >> *must_contain) & 1u)) continue;

    const std::uint64_t boundary = std::popcount(nb[a] & ~a);
    const std::uint64_t c = cut[a];
    auto better = [&](std::uint64_t num, std::uint64_t den, std::uint64_t bnum, std::uint64_t bden,
                      std::uint32_t bmask) {
      if (bmask == 0) return true;
      const std::uint64_t lhs = num * bden, rhs = bnum * den;
      return lhs < rhs || (lhs == rhs && lex_less(a, bmask));
    };
    if (better(boundary, size, best_vnum, best_vden, best_vm)) {
      best_vm = a;
      best_vnum = boundary;
      best_vden = size;
    }
    if (better(c, size, best_enum, best_eden, best_em)) {
      best_em = a;
      best_enum = c;
      best_eden = size;
    }
  }

  ExpansionReport r;
  r.epsilon_vertex = static_cast<double>(best_vnum) / static_cast<double>(best_vden);
  r.vertex_boundary = best_vnum;
  r.vertex_witness = mask_vertices(best_vm);
  r.h_edge = static_cast<double>(best_enum) / (static_cast<double>(g.degree) * static_cast<double>(best_eden));
  r.edge_cut = best_enum;
  r.edge_witness = mask_vertices(best_em);
  r.exact = true;
  r.vertex_transitive = g.kind == GraphKind::Cayley;
  return r;
}

ExpansionReport vertex_expansion_exact(const SparseGraph& g) { return expansion_exact(g); }
ExpansionReport edge_expansion_exact(const SparseGraph& g) { return expansion_exact(g); }

// ---------------------------------------------------------------------------
// Diameter

namespace {

constexpr std::uint64_t kAllSourcesBudget = 2'000'000'000;
constexpr std::uint32_t kSampledSources = 64;

std::uint32_t eccentricity(const SparseGraph& g, std::uint32_t source) {
  const auto dist = bfs_distances(g, source);
  std::uint32_t ecc = 0;
  for (auto d : dist) {
    if (d == std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorKind::Disconnected, "n=" + std::to_string(g.n));
    ecc = std::max(ecc, d);
  }
  return ecc;
}

}  // namespace

DiameterReport diameter(const SparseGraph& g, std::uint64_t seed) {
  if (g.n == 0) throw Error(ErrorKind::InvalidArgument, "empty graph");
  DiameterReport r;
  if (g.kind == GraphKind::Cayley) {
    r.diameter = eccentricity(g, 0);
    r.sources = 1;
    return r;
  }
  std::vector<std::uint32_t> sources;
  const std::uint64_t work = std::uint64_t{g.n} * g.targets.size();
  if (work <= kAllSourcesBudget) {
    sources.resize(g.n);
    for (std::uint32_t v = 0; v < g.n; ++v) sources[v] = v;
  } else {
    r.exact = false;
    std::mt19937_64 rng(seed);
    std::set<std::uint32_t> picked{0};
    while (picked.size() < kSampledSources) picked.insert(static_cast<std::uint32_t>(rng() % g.n));
    sources.assign(picked.begin(), picked.end());
  }
  std::vector<std::uint32_t> ecc(sources.size());
  parallel_for(sources.size(), 16, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) ecc[i] = eccentricity(g, sources[i]);
  });
  r.diameter = *std::max_element(ecc.begin(), ecc.end());
  r.sources = static_cast<std::uint32_t>(sources.size());
  return r;
}

// ---------------------------------------------------------------------------
// Class averages

std::vector<std::uint32_t> conjugacy_class(const Enumeration& G, const GroupElement& representative) {
  std::set<std::uint32_t> cls;
  for (const auto& h : G.elements) cls.insert(G.at(conjugate(representative, h)));
  return {cls.begin(), cls.end()};
}

std::vector<Eigenvalue> class_average_spectrum(const Enumeration& G, const GroupElement& representative) {
  if (G.order() > kClassAverageLimit) throw Error(ErrorKind::TooLarge, "|G|=" + std::to_string(G.order()));
  const auto cls = conjugacy_class(G, representative);
  std::vector<std::uint32_t> inv;
  for (auto c : cls) inv.push_back(G.at(inverse(G.elements[c])));
  std::sort(inv.begin(), inv.end());

  const auto n = static_cast<Eigen::Index>(G.order());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  const double w = 1.0 / static_cast<double>(cls.size());
  for (Eigen::Index x = 0; x < n; ++x)
    for (auto c : cls) L(x, G.at(compose(G.elements[c], G.elements[x]))) += w;
  if (inv != cls) L = 0.5 * (L + L.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  std::vector<Eigenvalue> out;
  for (double x : ev) {
    if (!out.empty() && std::abs(out.back().value - x) <= 1e-8) {
      ++out.back().multiplicity;
    } else {
      out.push_back({x, 1});
    }
  }
  return out;
}

}  // namespace forge
