#include "forge/ffield.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace forge {

namespace {

using Poly = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(lead, f[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

// Remainder for a general (not necessarily monic) divisor.
Poly poly_rem(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  const std::uint64_t lead_inv = invmod(b.back(), p);
  for (auto& c : b) c = mulmod(c, lead_inv, p);
  return poly_mod(std::move(a), b, p);
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(r), f, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(q, 1u);
  unsigned k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, k);
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic) {
  Poly f(monic.begin(), monic.end());
  if (f.size() < 2 || f.back() != 1) return false;
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  if (k <= 3 && p <= (1u << 20)) {
    for (std::uint64_t a = 0; a < p; ++a) {
      std::uint64_t v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = (mulmod(v, a, p) + f[i]) % p;
      if (v == 0) return false;
    }
  }
  // No factor of degree i <= k/2: gcd(f, x^{p^i} - x) = 1.
  Poly h{0, 1};
  for (std::size_t i = 1; i <= k / 2; ++i) {
    h = poly_powmod(h, p, f, p);
    Poly g = h;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    const Poly d = poly_gcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

std::vector<std::vector<std::uint64_t>> monic_irreducibles(std::uint64_t p, unsigned k,
                                                           std::size_t limit) {
  std::vector<std::vector<std::uint64_t>> out;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < k; ++i) total *= p;
  std::vector<std::uint64_t> f(k + 1, 0);
  f[k] = 1;
  for (std::uint64_t n = 0; n < total && out.size() < limit; ++n) {
    std::uint64_t m = n;
    for (unsigned i = k; i-- > 0;) {  // c_0 is the most significant digit
      f[i] = m % p;
      m /= p;
    }
    if (is_irreducible(p, f)) out.push_back(f);
  }
  return out;
}

std::uint64_t count_irreducible(std::uint64_t p, unsigned k) {
  auto mobius = [](unsigned n) {
    int mu = 1;
    for (unsigned d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
      }
    }
    if (n > 1) mu = -mu;
    return mu;
  };
  __int128 sum = 0;
  for (unsigned d = 1; d <= k; ++d) {
    if (k % d) continue;
    __int128 pw = 1;
    for (unsigned i = 0; i < k / d; ++i) pw *= p;
    sum += mobius(d) * pw;
  }
  return static_cast<std::uint64_t>(sum / k);
}

// ---------------------------------------------------------------------------
// Field

FieldPtr Field::make(std::uint64_t p, unsigned k, std::optional<std::vector<std::uint64_t>> modulus) {
  if (!forge::is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p));
  if (k < 1) throw Error(ErrorKind::DegreeMismatch, "k=0");
  if (p >= (1ull << 32)) throw Error(ErrorKind::TooLarge, "p=" + std::to_string(p));
  unsigned __int128 q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > (static_cast<unsigned __int128>(1) << 62)) {
      throw Error(ErrorKind::TooLarge, "q=" + std::to_string(p) + "^" + std::to_string(k));
    }
  }

  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->k_ = k;
  f->q_ = static_cast<std::uint64_t>(q);
  std::uint64_t pw = 1;
  for (unsigned i = 0; i < k; ++i, pw *= p) f->pow_p_.push_back(pw);
  unsigned width = 1;
  while (width < 8 && ((f->q_ - 1) >> (8 * width)) != 0) ++width;
  f->width_ = width;

  if (modulus && !modulus->empty()) {
    auto& m = *modulus;
    if (m.size() != k + 1 || m.back() != 1) {
      throw Error(ErrorKind::DegreeMismatch,
                  "modulus must be monic of degree " + std::to_string(k));
    }
    for (auto c : m) {
      if (c >= p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient out of range");
    }
    if (k > 1 && !is_irreducible(p, m)) throw Error(ErrorKind::Reducible, "modulus");
    if (k > 1) f->modulus_ = m;
  } else if (k > 1) {
    auto found = monic_irreducibles(p, k, 1);
    f->modulus_ = found.front();
  }
  f->build_tables();
  return f;
}

bool Field::same_as(const Field& o) const noexcept {
  return this == &o || (p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_);
}

void Field::build_tables() {
  if (k_ == 1 || q_ > kTableLimit) return;
  const std::uint64_t n = q_ - 1;
  const auto factors = distinct_prime_factors(n);
  auto slow_pow = [&](Value a, std::uint64_t e) {
    Value r = 1;
    while (e) {
      if (e & 1) r = poly_mul(r, a);
      a = poly_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  Value g = 0;
  for (Value cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(cand, n / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  exp_.resize(2 * n);
  log_.assign(q_, 0);
  Value x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x);
    exp_[i + n] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = poly_mul(x, g);
  }
}

Field::Value Field::add(Value a, Value b) const noexcept {
  if (k_ == 1) {
    const Value s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  Value r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    const Value da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    Value s = da + db;
    if (s >= p_) s -= p_;
    r += s * pow_p_[i];
  }
  return r;
}

Field::Value Field::neg(Value a) const noexcept {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  Value r = 0;
  for (unsigned i = 0; i < k_; ++i) {
    const Value d = a % p_;
    a /= p_;
    r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
  }
  return r;
}

Field::Value Field::sub(Value a, Value b) const noexcept { return add(a, neg(b)); }

Field::Value Field::mul(Value a, Value b) const noexcept {
  if (k_ == 1) return mulmod(a, b, p_);
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  return poly_mul(a, b);
}

Field::Value Field::poly_mul(Value a, Value b) const noexcept {
  const Poly pa = coeffs(a), pb = coeffs(b);
  Poly r = poly_mulmod(pa, pb, modulus_, p_);
  r.resize(k_, 0);
  return from_coeffs(r);
}

Field::Value Field::inv(Value a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
  if (k_ == 1) return invmod(a, p_);
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return poly_inv(a);
}

Field::Value Field::poly_inv(Value a) const {
  // Extended Euclid on (f, a).
  Poly r0 = modulus_, r1 = coeffs(a);
  trim(r1);
  Poly s0{}, s1{1};
  while (r1.size() > 1) {
    // q, r = divmod(r0, r1)
    Poly num = r0;
    const std::uint64_t lead_inv = invmod(r1.back(), p_);
    Poly quot(num.size() >= r1.size() ? num.size() - r1.size() + 1 : 1, 0);
    trim(num);
    while (num.size() >= r1.size() && !num.empty()) {
      const std::uint64_t c = mulmod(num.back(), lead_inv, p_);
      const std::size_t shift = num.size() - r1.size();
      quot[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        num[shift + i] = (num[shift + i] + p_ - mulmod(c, r1[i], p_)) % p_;
      }
      trim(num);
    }
    // s2 = s0 - quot * s1
    Poly prod(quot.size() + std::max<std::size_t>(s1.size(), 1), 0);
    for (std::size_t i = 0; i < quot.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j)
        prod[i + j] = (prod[i + j] + mulmod(quot[i], s1[j], p_)) % p_;
    Poly s2(std::max(prod.size(), s0.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      const std::uint64_t x = i < s0.size() ? s0[i] : 0;
      const std::uint64_t y = i < prod.size() ? prod[i] : 0;
      s2[i] = (x + p_ - y) % p_;
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(num);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since f is irreducible.
  const std::uint64_t c = invmod(r1[0], p_);
  for (auto& x : s1) x = mulmod(x, c, p_);
  Poly out = poly_mod(s1, modulus_, p_);
  out.resize(k_, 0);
  return from_coeffs(out);
}

Field::Value Field::pow(Value a, std::uint64_t e) const noexcept {
  Value r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Field::Value Field::from_int(std::int64_t n) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  return static_cast<Value>(((n % p) + p) % p);
}

std::vector<std::uint64_t> Field::coeffs(Value a) const {
  std::vector<std::uint64_t> c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

Field::Value Field::from_coeffs(std::span<const std::uint64_t> c) const {
  Value r = 0;
  for (std::size_t i = 0; i < c.size() && i < k_; ++i) r += (c[i] % p_) * pow_p_[i];
  return r;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr field, Field::Value value)
    : field_(std::move(field)), value_(value) {
  if (value_ >= field_->order()) throw Error(ErrorKind::InvalidArgument, "element out of range");
}

FieldElement::FieldElement(FieldPtr field, std::span<const std::uint64_t> coeffs)
    : field_(std::move(field)), value_(0) {
  if (coeffs.size() != field_->degree()) {
    throw Error(ErrorKind::DegreeMismatch, "expected " + std::to_string(field_->degree()) + " coefficients");
  }
  for (auto c : coeffs) {
    if (c >= field_->characteristic()) throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
  }
  value_ = field_->from_coeffs(coeffs);
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!field_->same_as(*o.field_)) throw Error(ErrorKind::SpecMismatch, "operands live in different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(value_, o.value_)};
}
FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

FieldElement arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div: return a / b;
  }
  return a;
}

// ---------------------------------------------------------------------------
// FieldMatrix

FieldMatrix FieldMatrix::identity(FieldPtr field, std::size_t dim) {
  FieldMatrix m = zero(std::move(field), dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::zero(FieldPtr field, std::size_t dim) {
  return FieldMatrix{std::move(field), dim, std::vector<Field::Value>(dim * dim, 0)};
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.dim != b.dim || !a.field->same_as(*b.field)) {
    throw Error(ErrorKind::SpecMismatch, "matrix product operands differ in shape or field");
  }
  const Field& f = *a.field;
  const std::size_t n = a.dim;
  FieldMatrix r = FieldMatrix::zero(a.field, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Field::Value aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Field::Value bkj = b(k, j);
        if (bkj == 0) continue;
        r(i, j) = f.add(r(i, j), f.mul(aik, bkj));
      }
    }
  }
  return r;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.dim != b.dim || !a.field->same_as(*b.field)) {
    throw Error(ErrorKind::SpecMismatch, "matrix sum operands differ in shape or field");
  }
  FieldMatrix r = a;
  for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] = a.field->add(a.entries[i], b.entries[i]);
  return r;
}

Field::Value determinant(const FieldMatrix& m) {
  const Field& f = *m.field;
  FieldMatrix a = m;
  const std::size_t n = a.dim;
  Field::Value det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const Field::Value inv = f.inv(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const Field::Value factor = f.mul(a(r, c), inv);
      for (std::size_t j = c; j < n; ++j) a(r, j) = f.sub(a(r, j), f.mul(factor, a(c, j)));
    }
  }
  return det;
}

FieldMatrix inverse(const FieldMatrix& m) {
  const Field& f = *m.field;
  const std::size_t n = m.dim;
  FieldMatrix a = m;
  FieldMatrix inv = FieldMatrix::identity(m.field, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::DivisionByZero, "singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    const Field::Value s = f.inv(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = f.mul(a(c, j), s);
      inv(c, j) = f.mul(inv(c, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Field::Value factor = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = f.sub(a(r, j), f.mul(factor, a(c, j)));
        inv(r, j) = f.sub(inv(r, j), f.mul(factor, inv(c, j)));
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Subfields and coordinates

SubfieldEmbedding::SubfieldEmbedding(FieldPtr base, FieldPtr ext)
    : base_(std::move(base)), ext_(std::move(ext)) {
  if (base_->characteristic() != ext_->characteristic() || ext_->degree() % base_->degree() != 0) {
    throw Error(ErrorKind::NotASubfield,
                "F_" + std::to_string(base_->order()) + " in F_" + std::to_string(ext_->order()));
  }
  if (base_->is_prime()) return;
  if (ext_->order() > (1ull << 26)) throw Error(ErrorKind::TooLarge, "subfield root search");
  const auto& f = base_->modulus();
  for (Field::Value y = 0; y < ext_->order(); ++y) {
    Field::Value v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = ext_->add(ext_->mul(v, y), f[i]);
    if (v == 0) {
      root_ = y;
      break;
    }
  }
  image_.resize(base_->order());
  for (Field::Value b = 0; b < base_->order(); ++b) {
    const auto c = base_->coeffs(b);
    Field::Value acc = 0, pw = 1;
    for (auto ci : c) {
      acc = ext_->add(acc, ext_->mul(ci, pw));
      pw = ext_->mul(pw, root_);
    }
    image_[b] = acc;
    preimage_.emplace_back(acc, b);
  }
  std::sort(preimage_.begin(), preimage_.end());
}

Field::Value SubfieldEmbedding::push(Field::Value b) const {
  if (base_->is_prime()) return b;
  return image_.at(b);
}

Field::Value SubfieldEmbedding::pull(Field::Value y) const {
  if (base_->is_prime()) {
    if (y < base_->order()) return y;
    throw Error(ErrorKind::NotASubfield, "element not in prime subfield");
  }
  auto it = std::lower_bound(preimage_.begin(), preimage_.end(), std::make_pair(y, Field::Value{0}));
  if (it == preimage_.end() || it->first != y) throw Error(ErrorKind::NotASubfield, "element not in subfield");
  return it->second;
}

ExtensionBasis::ExtensionBasis(FieldPtr base, FieldPtr ext, std::optional<std::vector<Field::Value>> basis)
    : embedding_(std::move(base), std::move(ext)) {
  const Field& e = *embedding_.ext();
  const unsigned d = embedding_.relative_degree();
  const unsigned kb = embedding_.base()->degree();
  const unsigned K = e.degree();
  prime_ = Field::make(e.characteristic());
  if (basis) {
    if (basis->size() != d) throw Error(ErrorKind::SingularBasis, "basis has wrong length");
    basis_ = *basis;
  } else {
    Field::Value t = 1;
    for (unsigned i = 0; i < d; ++i) {
      basis_.push_back(t);
      t = e.mul(t, e.generator());
    }
  }
  // Column (i*kb + j) holds the Z_p coefficients of w^j * b_i, w the image of t_base.
  std::vector<Field::Value> wpow(kb);
  for (unsigned j = 0; j < kb; ++j) {
    wpow[j] = embedding_.push(embedding_.base()->pow(embedding_.base()->generator(), j));
  }
  FieldMatrix m = FieldMatrix::zero(prime_, K);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < kb; ++j) {
      const auto c = e.coeffs(e.mul(wpow[j], basis_[i]));
      for (unsigned r = 0; r < K; ++r) m(r, i * kb + j) = c[r];
    }
  }
  if (determinant(m) == 0) throw Error(ErrorKind::SingularBasis, "not a basis over the subfield");
  to_coords_ = inverse(m);
}

std::vector<Field::Value> ExtensionBasis::coordinates(Field::Value x) const {
  const Field& e = *embedding_.ext();
  const Field& b = *embedding_.base();
  const unsigned d = dim();
  const unsigned kb = b.degree();
  const unsigned K = e.degree();
  const auto c = e.coeffs(x);
  std::vector<std::uint64_t> flat(K, 0);
  for (unsigned r = 0; r < K; ++r) {
    Field::Value acc = 0;
    for (unsigned s = 0; s < K; ++s) acc = prime_->add(acc, prime_->mul(to_coords_(r, s), c[s]));
    flat[r] = acc;
  }
  std::vector<Field::Value> out(d);
  for (unsigned i = 0; i < d; ++i) {
    out[i] = b.from_coeffs(std::span<const std::uint64_t>(flat.data() + i * kb, kb));
  }
  return out;
}

FieldMatrix ExtensionBasis::regular_matrix(Field::Value x) const {
  const unsigned d = dim();
  const Field& e = *embedding_.ext();
  FieldMatrix m = FieldMatrix::zero(embedding_.base(), d);
  for (unsigned col = 0; col < d; ++col) {
    const auto c = coordinates(e.mul(x, basis_[col]));
    for (unsigned row = 0; row < d; ++row) m(row, col) = c[row];
  }
  return m;
}

FieldElement norm(const FieldElement& x, const FieldPtr& base) {
  SubfieldEmbedding emb(base, x.field());
  const std::uint64_t q = base->order();
  std::uint64_t e = 0, pw = 1;
  for (unsigned i = 0; i < emb.relative_degree(); ++i) {
    e += pw;
    pw *= q;
  }
  const Field::Value y = x.field()->pow(x.value(), e);
  return {base, emb.pull(y)};
}

FieldMatrix regular_matrix(const FieldElement& x, const FieldPtr& base,
                           std::optional<std::vector<Field::Value>> basis) {
  return ExtensionBasis(base, x.field(), std::move(basis)).regular_matrix(x.value());
}

}  // namespace forge
