#pragma once

// Bounded products and bounded generation at desk scale: product-set covers by
// embedded subgroups, root-subgroup word lengths, and an explicit
// row-reduction factorization into elementary matrices.

#include <cstdint>
#include <string>
#include <vector>

#include "forge/gensets.hpp"

namespace forge {

/// An embedded subgroup given by generators.
struct Factor {
  std::string name;
  std::vector<GroupElement> generators;
};

struct DecompositionReport {
  std::string target;
  std::uint64_t group_order = 0;
  std::vector<std::string> factors;
  std::uint32_t depth = 0;                 // minimal t with K_1 ... K_t = G
  std::vector<double> coverage_by_round;   // |K_1 ... K_t| / |G| for t = 1, 2, ...
  std::uint32_t max_word_length = 0;       // root-subgroup metric (elementary mode)
  std::uint32_t max_word_length_single = 0;  // single elementary matrices, prime q only
  bool exact = true;
};

inline constexpr std::uint64_t kDecompositionCap = 1u << 20;

/// Grows K_1 K_2 ... cycling through `factors` until it is all of G. Each
/// step multiplies on the right by the subgroup <factor generators>.
/// Throws CapExceeded for |G| > 2^20, NotCovered after `max_rounds` steps or
/// a full cycle without growth.
DecompositionReport product_cover_depth(const Enumeration& G, const std::string& target,
                                        const std::vector<Factor>& factors, std::uint32_t max_rounds = 64);

/// Max over SL_d(F_q) of the shortest word in root-subgroup elements E_ij(a),
/// a != 0 (BFS from the identity). For prime q the single-elementary metric
/// over elementary_set is filled in as well.
DecompositionReport elementary_word_length_max(unsigned d, const FieldPtr& field,
                                               std::uint64_t cap = kDecompositionCap);

struct RootStep {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Field::Value alpha = 0;
};

/// Writes g in SL_d(F_q) as E_{i1 j1}(a1) ... E_{it jt}(at) by Gaussian
/// elimination using transvections only. Length <= d^2 + 2d - 3.
std::vector<RootStep> reduction_writer(const FieldMatrix& g);

/// Product of the word, left to right.
FieldMatrix recompose(const std::vector<RootStep>& word, const FieldPtr& field, std::size_t d);

/// SL_2 on coordinates {i, j} of SL_d(F), generated by E_ij(t^e), E_ji(t^e).
Factor sl2_block(const FieldPtr& field, unsigned d, unsigned i, unsigned j);

/// SL_k on the consecutive coordinates [first, first + k).
Factor sl_block(const FieldPtr& field, unsigned d, unsigned first, unsigned k);

/// h^-1 K h.
Factor conjugate_factor(const Factor& f, const GroupElement& h, const std::string& name);

/// SL_2 on coordinates {1,2}, {2,3}, {1,3}, then {1,2} conjugated by E_13(1)
/// and {2,3} conjugated by E_31(1), all inside SL_3(F).
std::vector<Factor> sl3_five_copies(const FieldPtr& field);

/// Alt(window) inside Alt(n), generated by 3-cycles.
Factor alt_window(std::uint32_t n, const std::vector<std::uint32_t>& window);

/// Windows [0, n_k), [n - n_k, n) and the middle window of length n_k.
std::vector<std::vector<std::uint32_t>> default_windows(std::uint32_t n, std::uint32_t n_k);

inline constexpr std::uint32_t kAltExactLimit = 9;

/// Cover depth of Alt(n) by copies of Alt(n_k) on the given windows.
/// Throws CapExceeded for n > 9.
DecompositionReport alt_product_cover(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& windows,
                                      std::uint32_t max_rounds = 64);

}  // namespace forge
