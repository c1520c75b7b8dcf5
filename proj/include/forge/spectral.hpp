#pragma once

// Expansion certificates for regular symmetric multigraphs: spectrum of the
// normalized adjacency operator D = A / degree, exact expansion constants,
// diameter, and the class-averaging operator on the regular representation.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "forge/cayley.hpp"

namespace forge {

enum class SpectralMethod { Dense, Lanczos };

const char* to_string(SpectralMethod m);

struct SpectralOptions {
  double tol = 1e-10;
  unsigned max_iter = 20000;
  std::uint64_t seed = 1;
  std::size_t krylov_dim = 0;  // 0: automatic
};

struct SpectralReport {
  std::uint64_t n = 0;
  std::uint32_t degree = 0;
  double lambda2 = 1.0;
  double lambda_min = 1.0;
  double gap = 0.0;
  SpectralMethod method = SpectralMethod::Dense;
  double tol = 0.0;
  double residual = 0.0;      // max of the two Ritz residuals (Lanczos only)
  unsigned iterations = 0;    // operator applications
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kDenseLimit = 6000;

/// All eigenvalues of D, descending. Throws TooLargeForDense above kDenseLimit.
std::vector<double> dense_spectrum(const SparseGraph& g);

/// lambda2 and lambda_min from dense_spectrum.
SpectralReport dense_report(const SparseGraph& g);

/// Thick-restart Lanczos on D restricted to the complement of the constant
/// vector, once for the largest and once for the smallest eigenvalue. Both
/// Ritz residuals are at most opts.tol on return. Results depend only on the
/// graph and opts, never on the thread count.
/// Throws Disconnected, NoConvergence.
SpectralReport lanczos_lambda2(const SparseGraph& g, const SpectralOptions& opts = {});

/// y = D x, rows split over worker threads.
void apply_normalized(const SparseGraph& g, const double* x, double* y);

inline constexpr std::uint32_t kExactLimit = 24;

struct ExpansionReport {
  double epsilon_vertex = 0.0;           // min |dA| / |A| over 0 < |A| <= n/2
  std::uint64_t vertex_boundary = 0;     // |dA| of the vertex witness
  std::vector<std::uint32_t> vertex_witness;
  double h_edge = 0.0;                   // min e(A, A^c) / (degree |A|)
  std::uint64_t edge_cut = 0;
  std::vector<std::uint32_t> edge_witness;
  bool exact = true;
  bool vertex_transitive = false;        // set for Cayley graphs
};

/// Exhaustive scan over all subsets with |A| <= n/2; ties go to the
/// lexicographically smallest sorted vertex list. When `must_contain` is set
/// only subsets containing that vertex are scanned.
/// Throws TooLargeForExact above kExactLimit vertices.
ExpansionReport expansion_exact(const SparseGraph& g, std::optional<std::uint32_t> must_contain = {});
ExpansionReport vertex_expansion_exact(const SparseGraph& g);
ExpansionReport edge_expansion_exact(const SparseGraph& g);

struct DiameterReport {
  std::uint32_t diameter = 0;
  bool exact = true;          // false: max eccentricity over sampled sources
  std::uint32_t sources = 0;
};

/// Cayley graphs are vertex-transitive, so one BFS from vertex 0 is exact.
/// Schreier graphs use every source while n * edges stays within budget and
/// 64 seeded random sources otherwise (a lower bound).
/// Throws Disconnected.
DiameterReport diameter(const SparseGraph& g, std::uint64_t seed = 1);

struct Eigenvalue {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

inline constexpr std::uint64_t kClassAverageLimit = 2000;

/// Conjugacy class of `representative` in G.
std::vector<std::uint32_t> conjugacy_class(const Enumeration& G, const GroupElement& representative);

/// Eigenvalues (descending, grouped within 1e-8) of L = (1/|C|) sum_{s in C} s
/// on the regular representation of G, symmetrised with the inverse class when
/// C is not closed under inversion. Throws TooLarge when |G| > 2000.
std::vector<Eigenvalue> class_average_spectrum(const Enumeration& G, const GroupElement& representative);

}  // namespace forge
