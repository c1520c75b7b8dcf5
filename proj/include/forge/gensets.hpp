#pragma once

// Explicit generating sets: the SL_2 standard pair, non-split tori and their
// conjugate sets, restriction of scalars, elementary matrices, cube
// embeddings into Alt(d^m), and EL_3 over products of matrix rings.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <random>
#include <string>
#include <vector>

#include "forge/groups.hpp"

namespace forge {

struct LabeledElement {
  std::string label;
  GroupElement element;
};

struct GeneratingSet {
  GroupHandle ambient;
  std::vector<LabeledElement> elements;
  bool symmetric = false;

  std::size_t size() const noexcept { return elements.size(); }
  std::vector<GroupElement> group_elements() const;
  bool has_identity() const;
};

/// Drops repeated keys, keeping the first occurrence.
GeneratingSet deduplicate(GeneratingSet s);

/// Appends "<label>^-1" for every element whose inverse is not already present.
GeneratingSet symmetric_closure(GeneratingSet s);

/// {A, B, A^-1, B^-1} with A = [[1,1],[0,1]], B = [[0,1],[-1,0]], deduplicated.
GeneratingSet sl2_standard(const FieldPtr& field);

/// Image of {x in F_{q^d} : Norm(x) = 1} in SL_d(F_q) under the regular
/// representation on the power basis.
struct Torus {
  FieldPtr base;
  unsigned d = 0;
  FieldPtr ext;
  std::vector<Field::Value> norm_one;   // extension elements, increasing
  std::vector<GroupElement> elements;   // matching regular matrices

  std::size_t order() const noexcept { return elements.size(); }
};

/// Throws TooLarge when (q^d - 1)/(q - 1) exceeds `cap`.
Torus nonsplit_torus(const FieldPtr& base, unsigned d, std::uint64_t cap = 1u << 20);

/// Entrywise inclusion of a matrix over a prime field into an extension.
FieldMatrix lift_to(const FieldMatrix& m, const FieldPtr& target);

/// {h^-1 C^{+-1} h : h in H}, deduplicated. Torus matrices over the prime
/// field are lifted into C's field.
GeneratingSet torus_conjugate_set(const Torus& H, const GroupElement& C);

/// Uniform element of SL_d(F): uniform invertible matrix with its first row
/// rescaled by det^-1.
FieldMatrix random_special_linear(const FieldPtr& field, std::size_t d, std::mt19937_64& rng);

struct SearchOptions {
  unsigned trials = 200;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  unsigned max_iter = 20000;
  std::uint64_t cap = 1u << 21;
};

struct ConjugatorSearch {
  GroupElement conjugator;
  GeneratingSet set;
  double lambda2 = 1.0;
  bool generates = false;
  unsigned best_trial = 0;
  unsigned trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t graph_order = 0;
  std::uint64_t ambient_order = 0;
  std::uint64_t prime = 0;              // p of the torus field
  double ramanujan_bound = 0.0;         // 2 sqrt(p) / (p + 1)
  bool below_threshold = false;         // lambda2 < 19/20
  bool ramanujan = false;               // lambda2 <= 2 sqrt(p) / (p + 1)
};

/// Draws `trials` uniform C in SL_d(ambient), trial t seeded by (seed, t),
/// builds torus_conjugate_set and keeps the C of smallest lambda2 (ties broken
/// by CanonicalKey). Sets that do not generate SL_d(ambient), and candidates
/// rejected by `accept`, count as lambda2 = 1.
ConjugatorSearch search_conjugator(const Torus& H, const FieldPtr& ambient, const SearchOptions& opts,
                                   const std::function<bool(const GroupElement&)>& accept = {});

/// Replaces every entry of g (a square matrix over F_{q^m}) by its regular
/// matrix over F_q: GL_n(F_{q^m}) -> GL_{nm}(F_q).
GroupElement restriction_of_scalars(const GroupElement& g, const FieldPtr& base);

struct ExtensionGenerators {
  GeneratingSet set;             // in SL_{2m}(F_q)
  ConjugatorSearch c_search;     // SL_2(F_{q^m}) level
  std::optional<ConjugatorSearch> d_search;  // SL_{2m}(F_q) level; absent when m = 1
  Torus big_torus;               // norm-one elements of F_{q^{2m}} over F_q, factored through SL_2(F_{q^m})
};

/// {rho(A), rho(B), rho(C), D} with inverses. C is searched against the
/// non-split torus of SL_2(F_q) inside SL_2(F_{q^m}); D against the torus of
/// order (q^{2m}-1)/(q-1) in SL_{2m}(F_q).
ExtensionGenerators sl2_over_extension_plus_conjugator(const FieldPtr& q, unsigned m,
                                                       const SearchOptions& c_opts,
                                                       const SearchOptions& d_opts);

/// {E_ij(a)} for i != j and a in {1, t, ..., t^{k-1}}, with inverses.
GeneratingSet elementary_set(unsigned d, const FieldPtr& field);

struct CubeSpec {
  unsigned k = 1;         // base group SL_{3k}(F_2) in full mode
  std::uint64_t d = 7;    // points per line
  unsigned m = 6;         // cube dimension
  std::uint64_t n = 0;    // d^m
  bool reduced = false;

  /// d = 2^{3k} - 1, m = 6.
  static CubeSpec full(unsigned k);
  static CubeSpec reduced_spec(std::uint64_t d, unsigned m);
};

/// Point index <-> base-d digits, digit 0 least significant.
std::vector<std::uint64_t> cube_digits(const CubeSpec& spec, std::uint64_t point);

struct CubeGenerators {
  CubeSpec spec;
  GeneratingSet set;                                  // permutations of the n cube points
  std::vector<std::vector<Permutation>> axis_images;  // axis_images[i][j] = pi_i(base_gens[j])
};

/// pi_i(g) moves every line parallel to axis i by g, acting on the i-th digit.
/// Throws OddAction for odd base generators, CubeTooLarge when d^m > 10^7 (or
/// the full-mode k is too large).
CubeGenerators cube_embeddings(const CubeSpec& spec, std::span<const Permutation> base_gens,
                               std::span<const std::string> labels = {});

/// Base generators for full mode: elementary_set(3k, F_2) acting on the
/// 2^{3k} - 1 nonzero vectors of F_2^{3k}.
std::pair<std::vector<Permutation>, std::vector<std::string>> cube_base_action(unsigned k);

struct RingGenerators {
  unsigned size = 1;                       // k'
  unsigned copies = 1;                     // s
  std::vector<std::vector<FieldMatrix>> r; // r[i][j]: generator i, factor j (over F_2)
};

/// r1 = companion matrices of the first s monic irreducibles of degree k',
/// r2 = matrix unit E_{1,k'}, r3 = diag(1, 0, ..., 0), each repeated per
/// factor. Throws SeparabilityViolated when fewer than s irreducibles exist or
/// {1, r1, r2, r3} does not generate Mat_{k'}(F_2)^s as a ring.
RingGenerators matrix_ring_generators(unsigned k_prime, unsigned s);

/// Dimension over F_2 of the subring of Mat_{k'}(F_2)^s generated by 1 and the
/// ring generators.
std::size_t generated_subring_dimension(const RingGenerators& gens);

/// E_ab(x) in EL_3(Mat_{k'}(F_2)^s), realised as a tuple of 3k' x 3k'
/// matrices (a plain matrix when s = 1). a, b in {0, 1, 2}.
GroupElement el3_elementary(unsigned k_prime, std::span<const FieldMatrix> x, unsigned a, unsigned b);

/// E_ab(1) for all six positions plus E_12(r_i), E_21(r_i), identities and
/// repeats removed.
GeneratingSet power_generators(unsigned k_prime, unsigned s);

}  // namespace forge
