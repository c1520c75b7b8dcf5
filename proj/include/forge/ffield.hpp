#pragma once

// Arithmetic in Z_p and F_{p^k} = Z_p[t]/(f).
//
// Elements are packed as a single integer: the coefficient vector
// (c_0, ..., c_{k-1}) of c_0 + c_1 t + ... + c_{k-1} t^{k-1} maps to
// sum c_i p^i. This packing is the element's identity everywhere (hashing,
// canonical keys, JSON).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "forge/error.hpp"

namespace forge {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  using Value = std::uint64_t;

  /// Builds F_{p^k}. When `modulus` is omitted the lexicographically smallest
  /// monic irreducible of degree k is chosen, scanning coefficient tuples
  /// (c_0, ..., c_{k-1}) with c_0 most significant.
  static FieldPtr make(std::uint64_t p, unsigned k = 1,
                       std::optional<std::vector<std::uint64_t>> modulus = std::nullopt);

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return k_; }
  std::uint64_t order() const noexcept { return q_; }
  bool is_prime() const noexcept { return k_ == 1; }
  /// Little-endian, k+1 entries with trailing 1. Empty for prime fields.
  const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

  bool same_as(const Field& other) const noexcept;

  static constexpr Value zero() noexcept { return 0; }
  static constexpr Value one() noexcept { return 1; }
  /// The class of t. For prime fields this is 1, so the power basis is {1}.
  Value generator() const noexcept { return k_ == 1 ? 1 : p_; }

  Value add(Value a, Value b) const noexcept;
  Value sub(Value a, Value b) const noexcept;
  Value neg(Value a) const noexcept;
  Value mul(Value a, Value b) const noexcept;
  Value inv(Value a) const;
  Value div(Value a, Value b) const { return mul(a, inv(b)); }
  Value pow(Value a, std::uint64_t e) const noexcept;
  /// Embeds an integer through Z -> Z_p.
  Value from_int(std::int64_t n) const noexcept;

  std::vector<std::uint64_t> coeffs(Value a) const;
  Value from_coeffs(std::span<const std::uint64_t> c) const;

  /// Bytes needed to store any element value.
  unsigned value_width() const noexcept { return width_; }

 private:
  Field() = default;
  void build_tables();
  Value poly_mul(Value a, Value b) const noexcept;
  Value poly_inv(Value a) const;

  std::uint64_t p_ = 2;
  unsigned k_ = 1;
  std::uint64_t q_ = 2;
  unsigned width_ = 1;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> pow_p_;  // p^i for i < k
  // log/exp tables over a primitive element, populated when q <= kTableLimit.
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  static constexpr std::uint64_t kTableLimit = 1u << 16;
};

/// Value type pairing an element with its field. Mixed-field arithmetic throws
/// SpecMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Field::Value value);
  FieldElement(FieldPtr field, std::span<const std::uint64_t> coeffs);

  const FieldPtr& field() const noexcept { return field_; }
  Field::Value value() const noexcept { return value_; }
  std::vector<std::uint64_t> coeffs() const { return field_->coeffs(value_); }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  bool operator==(const FieldElement& o) const noexcept {
    return value_ == o.value_ && field_->same_as(*o.field_);
  }

 private:
  void check_same(const FieldElement& o) const;
  FieldPtr field_;
  Field::Value value_;
};

enum class FieldOp { Add, Sub, Mul, Div };
FieldElement arith(const FieldElement& a, const FieldElement& b, FieldOp op);

/// Dense square matrix over a finite field, row-major.
struct FieldMatrix {
  FieldPtr field;
  std::size_t dim = 0;
  std::vector<Field::Value> entries;

  static FieldMatrix identity(FieldPtr field, std::size_t dim);
  static FieldMatrix zero(FieldPtr field, std::size_t dim);

  Field::Value& operator()(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  Field::Value operator()(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }

  bool operator==(const FieldMatrix& o) const noexcept {
    return dim == o.dim && entries == o.entries && field->same_as(*o.field);
  }
};

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
Field::Value determinant(const FieldMatrix& m);
/// Throws DivisionByZero for singular input.
FieldMatrix inverse(const FieldMatrix& m);

/// The inclusion F_q -> F_{q^d}. For a prime base this is the inclusion of
/// constants; otherwise t_base maps to the smallest-valued root of the base
/// modulus in the extension.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldPtr base, FieldPtr ext);

  const FieldPtr& base() const noexcept { return base_; }
  const FieldPtr& ext() const noexcept { return ext_; }
  /// [ext : base]
  unsigned relative_degree() const noexcept { return ext_->degree() / base_->degree(); }

  Field::Value push(Field::Value base_value) const;
  /// Throws NotASubfield when `ext_value` is outside the image.
  Field::Value pull(Field::Value ext_value) const;

 private:
  FieldPtr base_;
  FieldPtr ext_;
  Field::Value root_ = 0;
  std::vector<Field::Value> image_;                 // image_[b] = push(b)
  std::vector<std::pair<Field::Value, Field::Value>> preimage_;  // sorted (ext, base)
};

/// Coordinates of F_{q^d} over F_q in a chosen basis; used to realise
/// multiplication maps as d x d matrices over F_q.
class ExtensionBasis {
 public:
  /// Default basis is the power basis 1, t, ..., t^{d-1} of the extension.
  ExtensionBasis(FieldPtr base, FieldPtr ext,
                 std::optional<std::vector<Field::Value>> basis = std::nullopt);

  const SubfieldEmbedding& embedding() const noexcept { return embedding_; }
  unsigned dim() const noexcept { return embedding_.relative_degree(); }
  const std::vector<Field::Value>& basis() const noexcept { return basis_; }

  /// Base-field coordinates of an extension element.
  std::vector<Field::Value> coordinates(Field::Value x) const;
  /// Matrix of y -> x*y acting on coordinate columns.
  FieldMatrix regular_matrix(Field::Value x) const;

 private:
  SubfieldEmbedding embedding_;
  std::vector<Field::Value> basis_;
  FieldMatrix to_coords_;  // over Z_p, maps ext coefficients to (basis, base-coefficient) pairs
  FieldPtr prime_;
};

/// x^{(q^d-1)/(q-1)} pulled back into the base field.
FieldElement norm(const FieldElement& x, const FieldPtr& base);

FieldMatrix regular_matrix(const FieldElement& x, const FieldPtr& base,
                           std::optional<std::vector<Field::Value>> basis = std::nullopt);

bool is_prime(std::uint64_t n) noexcept;

/// Returns (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) noexcept;

/// Number of monic irreducible polynomials of degree k over F_p.
std::uint64_t count_irreducible(std::uint64_t p, unsigned k);

/// All monic irreducibles of degree k over F_p in the same lex order used by
/// Field::make, each as k+1 little-endian coefficients.
std::vector<std::vector<std::uint64_t>> monic_irreducibles(std::uint64_t p, unsigned k,
                                                           std::size_t limit);

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic);

}  // namespace forge
