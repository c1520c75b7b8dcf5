#include "forge/groups.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace forge {

// ---------------------------------------------------------------------------
// Permutation

Permutation Permutation::identity(std::uint32_t n) {
  Permutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), 0u);
  return p;
}

Permutation Permutation::from_cycles(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
  Permutation p = identity(n);
  std::vector<bool> used(n, false);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n || used[c[i]]) throw Error(ErrorKind::InvalidArgument, "cycles are not disjoint");
      used[c[i]] = true;
      p.image[c[i]] = c[(i + 1) % c.size()];
    }
  }
  return p;
}

bool Permutation::is_even() const {
  std::vector<bool> seen(image.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = image[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::AmbientMismatch, "permutation degrees differ");
  Permutation r;
  r.image.resize(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r.image[x] = a.image[b.image[x]];
  return r;
}

Permutation inverse(const Permutation& a) {
  Permutation r;
  r.image.resize(a.size());
  for (std::uint32_t x = 0; x < a.size(); ++x) r.image[a.image[x]] = x;
  return r;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(TupleElement t) : v_(std::move(t)) {
  const auto& parts = std::get<TupleElement>(v_).parts;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].variant().index() != parts[0].variant().index()) {
      throw Error(ErrorKind::AmbientMismatch, "tuple parts mix element kinds");
    }
  }
}

namespace {

void put_be(std::string& out, std::uint64_t v, unsigned width) {
  for (unsigned i = width; i-- > 0;) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

unsigned perm_width(std::uint32_t n) {
  if (n <= 256) return 1;
  if (n <= 65536) return 2;
  return 4;
}

void append_key(std::string& out, const GroupElement& g) {
  if (g.is_matrix()) {
    const auto& m = g.matrix();
    out.push_back('M');
    out.push_back(static_cast<char>(m.dim));
    const unsigned w = m.field->value_width();
    for (auto e : m.entries) put_be(out, e, w);
  } else if (g.is_perm()) {
    const auto& p = g.perm();
    out.push_back('P');
    const unsigned w = perm_width(p.size());
    for (auto x : p.image) put_be(out, x, w);
  } else {
    const auto& parts = g.tuple().parts;
    out.push_back('T');
    put_be(out, parts.size(), 4);
    for (const auto& part : parts) {
      std::string sub;
      append_key(sub, part);
      put_be(out, sub.size(), 4);
      out += sub;
    }
  }
}

}  // namespace

CanonicalKey GroupElement::key() const {
  std::string out;
  append_key(out, *this);
  return out;
}

bool GroupElement::is_identity() const {
  if (is_matrix()) {
    const auto& m = matrix();
    for (std::size_t i = 0; i < m.dim; ++i)
      for (std::size_t j = 0; j < m.dim; ++j)
        if (m(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }
  if (is_perm()) {
    const auto& p = perm();
    for (std::uint32_t x = 0; x < p.size(); ++x)
      if (p.image[x] != x) return false;
    return true;
  }
  return std::all_of(tuple().parts.begin(), tuple().parts.end(),
                     [](const GroupElement& g) { return g.is_identity(); });
}

bool GroupElement::operator==(const GroupElement& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (is_matrix()) return matrix() == o.matrix();
  if (is_perm()) return perm() == o.perm();
  return tuple().parts == o.tuple().parts;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.variant().index() != b.variant().index()) {
    throw Error(ErrorKind::AmbientMismatch, "cannot compose different element kinds");
  }
  if (a.is_matrix()) {
    if (a.matrix().dim != b.matrix().dim || !a.matrix().field->same_as(*b.matrix().field)) {
      throw Error(ErrorKind::AmbientMismatch, "matrix shapes or fields differ");
    }
    return a.matrix() * b.matrix();
  }
  if (a.is_perm()) return a.perm() * b.perm();
  const auto& pa = a.tuple().parts;
  const auto& pb = b.tuple().parts;
  if (pa.size() != pb.size()) throw Error(ErrorKind::AmbientMismatch, "tuple lengths differ");
  TupleElement t;
  t.parts.reserve(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) t.parts.push_back(compose(pa[i], pb[i]));
  return t;
}

GroupElement inverse(const GroupElement& a) {
  if (a.is_matrix()) return inverse(a.matrix());
  if (a.is_perm()) return inverse(a.perm());
  TupleElement t;
  for (const auto& p : a.tuple().parts) t.parts.push_back(inverse(p));
  return t;
}

GroupElement identity_like(const GroupElement& a) {
  if (a.is_matrix()) return FieldMatrix::identity(a.matrix().field, a.matrix().dim);
  if (a.is_perm()) return Permutation::identity(a.perm().size());
  TupleElement t;
  for (const auto& p : a.tuple().parts) t.parts.push_back(identity_like(p));
  return t;
}

GroupElement power(const GroupElement& a, std::uint64_t e) {
  GroupElement r = identity_like(a);
  GroupElement b = a;
  while (e) {
    if (e & 1) r = compose(r, b);
    b = compose(b, b);
    e >>= 1;
  }
  return r;
}

std::uint64_t element_order(const GroupElement& a) {
  GroupElement x = a;
  std::uint64_t n = 1;
  while (!x.is_identity()) {
    x = compose(x, a);
    ++n;
  }
  return n;
}

GroupElement conjugate(const GroupElement& g, const GroupElement& h) {
  return compose(inverse(h), compose(g, h));
}

bool is_special(const GroupElement& g) {
  if (g.is_matrix()) return determinant(g.matrix()) == 1;
  if (g.is_perm()) return g.perm().is_even();
  return std::all_of(g.tuple().parts.begin(), g.tuple().parts.end(), is_special);
}

// ---------------------------------------------------------------------------
// GroupHandle

namespace {

std::optional<std::uint64_t> checked_mul(std::optional<std::uint64_t> a, std::uint64_t b) {
  if (!a) return std::nullopt;
  unsigned __int128 x = static_cast<unsigned __int128>(*a) * b;
  if (x > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(x);
}

std::optional<std::uint64_t> sl_order(unsigned d, std::uint64_t q) {
  std::optional<std::uint64_t> out = 1;
  std::optional<std::uint64_t> qi = 1;
  for (unsigned i = 1; i <= d; ++i) {
    qi = checked_mul(qi, q);
    if (!qi) return std::nullopt;
    if (i >= 2) out = checked_mul(out, *qi - 1);
  }
  for (unsigned i = 0; i < d * (d - 1) / 2; ++i) out = checked_mul(out, q);
  return out;
}

std::optional<std::uint64_t> factorial_order(std::uint32_t n) {
  std::optional<std::uint64_t> out = 1;
  for (std::uint32_t i = 2; i <= n; ++i) out = checked_mul(out, i);
  return out;
}

}  // namespace

GroupHandle GroupHandle::sl(unsigned d, FieldPtr field) {
  GroupHandle h;
  h.kind = GroupKind::SL;
  h.d = d;
  h.order = sl_order(d, field->order());
  h.field = std::move(field);
  return h;
}

GroupHandle GroupHandle::psl(unsigned d, FieldPtr field) {
  GroupHandle h = sl(d, std::move(field));
  h.kind = GroupKind::PSL;
  if (h.order) *h.order /= std::gcd<std::uint64_t>(d, h.field->order() - 1);
  return h;
}

GroupHandle GroupHandle::alt(std::uint32_t n) {
  GroupHandle h;
  h.kind = GroupKind::Alt;
  h.n = n;
  h.order = factorial_order(n);
  if (h.order && n >= 2) *h.order /= 2;
  return h;
}

GroupHandle GroupHandle::sym(std::uint32_t n) {
  GroupHandle h = alt(n);
  h.kind = GroupKind::Sym;
  h.order = factorial_order(n);
  return h;
}

GroupHandle GroupHandle::direct_power(GroupHandle base, unsigned s) {
  GroupHandle h;
  h.kind = GroupKind::DirectPower;
  h.s = s;
  h.order = 1;
  for (unsigned i = 0; i < s; ++i) h.order = checked_mul(h.order, base.order.value_or(0));
  if (!base.order) h.order.reset();
  h.base.push_back(std::move(base));
  return h;
}

std::string GroupHandle::name() const {
  switch (kind) {
    case GroupKind::SL:
    case GroupKind::PSL:
      return std::string(kind == GroupKind::SL ? "SL" : "PSL") + "_" + std::to_string(d) + "(F_" +
             std::to_string(field->order()) + ")";
    case GroupKind::Alt: return "Alt(" + std::to_string(n) + ")";
    case GroupKind::Sym: return "Sym(" + std::to_string(n) + ")";
    case GroupKind::DirectPower: return base.front().name() + "^" + std::to_string(s);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Enumeration

std::optional<std::uint32_t> Enumeration::find(const GroupElement& g) const {
  auto it = index.find(g.key());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Enumeration::at(const GroupElement& g) const {
  auto idx = find(g);
  if (!idx) throw Error(ErrorKind::AmbientMismatch, "element not in enumerated group");
  return *idx;
}

Enumeration enumerate_group(std::span<const GroupElement> generators, std::uint64_t cap) {
  if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator list");
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be positive");

  std::vector<GroupElement> moves;
  std::unordered_set<CanonicalKey> move_keys;
  auto add_move = [&](GroupElement g) {
    if (move_keys.insert(g.key()).second) moves.push_back(std::move(g));
  };
  for (const auto& g : generators) {
    add_move(g);
    add_move(inverse(g));
  }

  Enumeration e;
  GroupElement id = identity_like(generators.front());
  e.index.emplace(id.key(), 0);
  e.elements.push_back(std::move(id));

  std::size_t layer_begin = 0;
  while (layer_begin < e.elements.size()) {
    const std::size_t layer_end = e.elements.size();
    std::vector<std::pair<CanonicalKey, GroupElement>> found;
    std::unordered_set<CanonicalKey> found_keys;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : moves) {
        GroupElement h = compose(s, e.elements[i]);
        CanonicalKey k = h.key();
        if (e.index.count(k) || found_keys.count(k)) continue;
        found_keys.insert(k);
        found.emplace_back(std::move(k), std::move(h));
        if (e.elements.size() + found.size() > cap) {
          throw Error(ErrorKind::CapExceeded, std::to_string(cap));
        }
      }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, h] : found) {
      e.index.emplace(std::move(k), static_cast<std::uint32_t>(e.elements.size()));
      e.elements.push_back(std::move(h));
    }
    layer_begin = layer_end;
  }
  return e;
}

// ---------------------------------------------------------------------------
// PSL

std::vector<Field::Value> central_scalars(const Field& field, unsigned d) {
  std::vector<Field::Value> out;
  for (Field::Value x = 1; x < field.order(); ++x) {
    if (field.pow(x, d) == 1) out.push_back(x);
  }
  return out;
}

GroupElement psl_reduce(const GroupElement& a) {
  const FieldMatrix& m = a.matrix();
  const Field& f = *m.field;
  GroupElement best = a;
  CanonicalKey best_key = a.key();
  for (Field::Value lambda : central_scalars(f, static_cast<unsigned>(m.dim))) {
    FieldMatrix s = m;
    for (auto& x : s.entries) x = f.mul(x, lambda);
    GroupElement g(std::move(s));
    CanonicalKey k = g.key();
    if (k < best_key) {
      best_key = std::move(k);
      best = std::move(g);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Actions

std::uint64_t NonzeroVectors::size() const {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < dim; ++i) n *= field->order();
  return n - 1;
}

std::vector<Field::Value> NonzeroVectors::vector(std::uint64_t point) const {
  std::vector<Field::Value> v(dim);
  std::uint64_t x = point + 1;
  for (unsigned i = 0; i < dim; ++i) {
    v[i] = x % field->order();
    x /= field->order();
  }
  return v;
}

std::uint64_t NonzeroVectors::point(std::span<const Field::Value> v) const {
  std::uint64_t x = 0;
  for (unsigned i = dim; i-- > 0;) x = x * field->order() + v[i];
  if (x == 0) throw Error(ErrorKind::NotAnAction, "zero vector");
  return x - 1;
}

std::uint64_t domain_size(const PointDomain& domain) {
  if (const auto* nv = std::get_if<NonzeroVectors>(&domain)) return nv->size();
  return std::get<PointSet>(domain).n;
}

Permutation act_on_points(const GroupElement& g, const PointDomain& domain) {
  if (const auto* nv = std::get_if<NonzeroVectors>(&domain)) {
    if (!g.is_matrix() || g.matrix().dim != nv->dim || !g.matrix().field->same_as(*nv->field)) {
      throw Error(ErrorKind::NotAnAction, "element does not act on F_q^" + std::to_string(nv->dim));
    }
    const auto n = nv->size();
    if (n > 0xffffffffull) throw Error(ErrorKind::TooLarge, "point domain");
    const FieldMatrix& m = g.matrix();
    const Field& f = *m.field;
    Permutation p;
    p.image.resize(n);
    std::vector<Field::Value> w(nv->dim);
    for (std::uint64_t x = 0; x < n; ++x) {
      const auto v = nv->vector(x);
      for (unsigned r = 0; r < nv->dim; ++r) {
        Field::Value acc = 0;
        for (unsigned c = 0; c < nv->dim; ++c) acc = f.add(acc, f.mul(m(r, c), v[c]));
        w[r] = acc;
      }
      p.image[x] = static_cast<std::uint32_t>(nv->point(w));
    }
    return p;
  }
  const auto& ps = std::get<PointSet>(domain);
  if (!g.is_perm() || g.perm().size() != ps.n) {
    throw Error(ErrorKind::NotAnAction, "element does not permute " + std::to_string(ps.n) + " points");
  }
  return g.perm();
}

std::vector<std::uint32_t> orbit(std::span<const Permutation> gens, std::uint32_t point) {
  if (gens.empty()) return {point};
  const std::uint32_t n = gens.front().size();
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      const std::uint32_t y = g(out[i]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

FieldMatrix elementary_matrix(const FieldPtr& field, std::size_t dim, std::size_t i, std::size_t j,
                              Field::Value alpha) {
  FieldMatrix m = FieldMatrix::identity(field, dim);
  m(i, j) = field->add(m(i, j), alpha);
  return m;
}

}  // namespace forge
