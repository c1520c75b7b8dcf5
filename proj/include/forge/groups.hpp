#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "forge/ffield.hpp"

namespace forge {

/// Permutation of {0, ..., n-1} stored as its image array.
/// Composition convention, used everywhere: (a o b)(x) = a(b(x)).
struct Permutation {
  std::vector<std::uint32_t> image;

  static Permutation identity(std::uint32_t n);
  /// Builds a permutation from disjoint cycles.
  static Permutation from_cycles(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& cycles);

  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(image.size()); }
  std::uint32_t operator()(std::uint32_t x) const { return image[x]; }
  bool is_even() const;
  bool operator==(const Permutation&) const = default;
};

Permutation operator*(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);

/// Byte string identifying an element inside its ambient group. Byte order
/// (unsigned lexicographic) is the global element order used by every BFS.
using CanonicalKey = std::string;

class GroupElement;

/// Element of a direct power; all parts share variant and shape.
struct TupleElement {
  std::vector<GroupElement> parts;
};

class GroupElement {
 public:
  using Variant = std::variant<FieldMatrix, Permutation, TupleElement>;

  GroupElement(FieldMatrix m) : v_(std::move(m)) {}
  GroupElement(Permutation p) : v_(std::move(p)) {}
  GroupElement(TupleElement t);

  bool is_matrix() const noexcept { return std::holds_alternative<FieldMatrix>(v_); }
  bool is_perm() const noexcept { return std::holds_alternative<Permutation>(v_); }
  bool is_tuple() const noexcept { return std::holds_alternative<TupleElement>(v_); }

  const FieldMatrix& matrix() const { return std::get<FieldMatrix>(v_); }
  const Permutation& perm() const { return std::get<Permutation>(v_); }
  const TupleElement& tuple() const { return std::get<TupleElement>(v_); }
  const Variant& variant() const noexcept { return v_; }

  CanonicalKey key() const;
  bool is_identity() const;

  bool operator==(const GroupElement& o) const;

 private:
  Variant v_;
};

/// Throws AmbientMismatch when a and b live in different groups.
GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement identity_like(const GroupElement& a);
GroupElement power(const GroupElement& a, std::uint64_t e);
std::uint64_t element_order(const GroupElement& a);
/// h^{-1} g h
GroupElement conjugate(const GroupElement& g, const GroupElement& h);

/// det = 1 for matrices (componentwise for tuples), evenness for permutations.
bool is_special(const GroupElement& g);

enum class GroupKind { SL, PSL, Alt, Sym, DirectPower };

struct GroupHandle {
  GroupKind kind = GroupKind::SL;
  unsigned d = 0;
  FieldPtr field;
  std::uint32_t n = 0;
  std::vector<GroupHandle> base;  // single entry for DirectPower
  unsigned s = 0;
  std::optional<std::uint64_t> order;  // closed form; empty on overflow

  static GroupHandle sl(unsigned d, FieldPtr field);
  static GroupHandle psl(unsigned d, FieldPtr field);
  static GroupHandle alt(std::uint32_t n);
  static GroupHandle sym(std::uint32_t n);
  static GroupHandle direct_power(GroupHandle base, unsigned s);

  std::string name() const;
};

struct Enumeration {
  std::vector<GroupElement> elements;            // elements[0] is the identity
  std::unordered_map<CanonicalKey, std::uint32_t> index;

  std::uint64_t order() const noexcept { return elements.size(); }
  std::optional<std::uint32_t> find(const GroupElement& g) const;
  std::uint32_t at(const GroupElement& g) const;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 24;

/// BFS closure of <generators> under left multiplication by generators and
/// their inverses. Each BFS layer is sorted by CanonicalKey before indices are
/// assigned, so numbering depends only on the generator list.
/// Throws CapExceeded when the closure grows past `cap`.
Enumeration enumerate_group(std::span<const GroupElement> generators,
                            std::uint64_t cap = kDefaultEnumerationCap);

/// Scalars lambda with lambda^d = 1.
std::vector<Field::Value> central_scalars(const Field& field, unsigned d);

/// Smallest-key representative of the coset {lambda a : lambda^d = 1}.
GroupElement psl_reduce(const GroupElement& a);

/// F_q^d \ {0}; point i is the vector whose base-q digits spell i + 1.
struct NonzeroVectors {
  FieldPtr field;
  unsigned dim = 0;

  std::uint64_t size() const;
  std::vector<Field::Value> vector(std::uint64_t point) const;
  std::uint64_t point(std::span<const Field::Value> v) const;
};

/// The points {0, ..., n-1} permuted directly.
struct PointSet {
  std::uint32_t n = 0;
};

using PointDomain = std::variant<NonzeroVectors, PointSet>;

std::uint64_t domain_size(const PointDomain& domain);

/// Permutation of the domain induced by g. Throws NotAnAction when g does not
/// act on this domain.
Permutation act_on_points(const GroupElement& g, const PointDomain& domain);

/// Orbit of `point` under the group generated by `gens`, in BFS order.
std::vector<std::uint32_t> orbit(std::span<const Permutation> gens, std::uint32_t point);

/// E_ij(alpha) = I + alpha e_ij.
FieldMatrix elementary_matrix(const FieldPtr& field, std::size_t dim, std::size_t i, std::size_t j,
                              Field::Value alpha);

}  // namespace forge
