#include "forge/gensets.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace forge {

std::vector<GroupElement> GeneratingSet::group_elements() const {
  std::vector<GroupElement> out;
  out.reserve(elements.size());
  for (const auto& le : elements) out.push_back(le.element);
  return out;
}

bool GeneratingSet::has_identity() const {
  return std::any_of(elements.begin(), elements.end(), [](const auto& le) { return le.element.is_identity(); });
}

GeneratingSet deduplicate(GeneratingSet s) {
  std::unordered_set<CanonicalKey> seen;
  std::vector<LabeledElement> kept;
  for (auto& le : s.elements) {
    if (seen.insert(le.element.key()).second) kept.push_back(std::move(le));
  }
  s.elements = std::move(kept);
  return s;
}

GeneratingSet symmetric_closure(GeneratingSet s) {
  s = deduplicate(std::move(s));
  std::unordered_set<CanonicalKey> seen;
  for (const auto& le : s.elements) seen.insert(le.element.key());
  const std::size_t n = s.elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    GroupElement inv = inverse(s.elements[i].element);
    if (seen.insert(inv.key()).second) {
      s.elements.push_back({s.elements[i].label + "^-1", std::move(inv)});
    }
  }
  s.symmetric = true;
  return s;
}

GeneratingSet sl2_standard(const FieldPtr& field) {
  FieldMatrix a = FieldMatrix::identity(field, 2);
  a(0, 1) = 1;
  FieldMatrix b = FieldMatrix::zero(field, 2);
  b(0, 1) = 1;
  b(1, 0) = field->neg(1);
  GeneratingSet s{GroupHandle::sl(2, field), {{"A", a}, {"B", b}}, false};
  return symmetric_closure(std::move(s));
}

// ---------------------------------------------------------------------------
// Tori

Torus nonsplit_torus(const FieldPtr& base, unsigned d, std::uint64_t cap) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "torus needs d >= 2");
  const std::uint64_t q = base->order();
  std::uint64_t order = 0, pw = 1;
  for (unsigned i = 0; i < d; ++i) {
    order += pw;
    if (order > cap) throw Error(ErrorKind::TooLarge, "torus order exceeds " + std::to_string(cap));
    pw *= q;
  }
  Torus t;
  t.base = base;
  t.d = d;
  t.ext = Field::make(base->characteristic(), base->degree() * d);
  const ExtensionBasis basis(base, t.ext);
  for (Field::Value x = 1; x < t.ext->order(); ++x) {
    if (t.ext->pow(x, order) != 1) continue;
    t.norm_one.push_back(x);
    t.elements.emplace_back(basis.regular_matrix(x));
  }
  return t;
}

FieldMatrix lift_to(const FieldMatrix& m, const FieldPtr& target) {
  if (m.field->same_as(*target)) return m;
  const SubfieldEmbedding emb(m.field, target);
  FieldMatrix out{target, m.dim, m.entries};
  for (auto& x : out.entries) x = emb.push(x);
  return out;
}

GeneratingSet torus_conjugate_set(const Torus& H, const GroupElement& C) {
  const FieldMatrix& c = C.matrix();
  const GroupElement c_inv = inverse(C);
  GeneratingSet s{GroupHandle::sl(static_cast<unsigned>(c.dim), c.field), {}, false};
  for (std::size_t i = 0; i < H.elements.size(); ++i) {
    const GroupElement h = lift_to(H.elements[i].matrix(), c.field);
    const std::string hl = "h" + std::to_string(i);
    s.elements.push_back({hl + "^-1 C " + hl, conjugate(C, h)});
    s.elements.push_back({hl + "^-1 C^-1 " + hl, conjugate(c_inv, h)});
  }
  s = deduplicate(std::move(s));
  s.symmetric = true;
  return s;
}

FieldMatrix random_special_linear(const FieldPtr& field, std::size_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<Field::Value> pick(0, field->order() - 1);
  for (;;) {
    FieldMatrix m = FieldMatrix::zero(field, d);
    for (auto& x : m.entries) x = pick(rng);
    const Field::Value det = determinant(m);
    if (det == 0) continue;
    const Field::Value s = field->inv(det);
    for (std::size_t j = 0; j < d; ++j) m(0, j) = field->mul(m(0, j), s);
    return m;
  }
}

GroupElement restriction_of_scalars(const GroupElement& g, const FieldPtr& base) {
  const FieldMatrix& m = g.matrix();
  const ExtensionBasis basis(base, m.field);
  const std::size_t r = basis.dim();
  const std::size_t n = m.dim;
  std::map<Field::Value, FieldMatrix> cache;
  FieldMatrix out = FieldMatrix::zero(base, n * r);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto it = cache.find(m(i, j));
      if (it == cache.end()) it = cache.emplace(m(i, j), basis.regular_matrix(m(i, j))).first;
      const FieldMatrix& block = it->second;
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) out(i * r + a, j * r + b) = block(a, b);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary matrices

GeneratingSet elementary_set(unsigned d, const FieldPtr& field) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "elementary_set needs d >= 2");
  GeneratingSet s{GroupHandle::sl(d, field), {}, false};
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      if (i == j) continue;
      for (unsigned e = 0; e < field->degree(); ++e) {
        const std::string alpha = field->is_prime() ? "1" : (e == 0 ? "1" : "t^" + std::to_string(e));
        s.elements.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1) + "(" + alpha + ")",
                              elementary_matrix(field, d, i, j, field->pow(field->generator(), e))});
      }
    }
  }
  return symmetric_closure(std::move(s));
}

// ---------------------------------------------------------------------------
// Cube embeddings

namespace {
constexpr std::uint64_t kCubeLimit = 10'000'000;
}

CubeSpec CubeSpec::full(unsigned k) {
  if (k < 1 || k > 3) throw Error(ErrorKind::CubeTooLarge, "k=" + std::to_string(k));
  CubeSpec s;
  s.k = k;
  s.d = (1ull << (3 * k)) - 1;
  s.m = 6;
  s.n = 1;
  for (unsigned i = 0; i < s.m; ++i) s.n *= s.d;
  s.reduced = false;
  return s;
}

CubeSpec CubeSpec::reduced_spec(std::uint64_t d, unsigned m) {
  if (d < 1 || m < 1) throw Error(ErrorKind::InvalidArgument, "cube needs d, m >= 1");
  CubeSpec s;
  s.k = 0;
  s.d = d;
  s.m = m;
  s.n = 1;
  for (unsigned i = 0; i < m; ++i) {
    s.n *= d;
    if (s.n > kCubeLimit) throw Error(ErrorKind::CubeTooLarge, std::to_string(d) + "^" + std::to_string(m));
  }
  s.reduced = true;
  return s;
}

std::vector<std::uint64_t> cube_digits(const CubeSpec& spec, std::uint64_t point) {
  std::vector<std::uint64_t> out(spec.m);
  for (unsigned i = 0; i < spec.m; ++i) {
    out[i] = point % spec.d;
    point /= spec.d;
  }
  return out;
}

namespace {

Permutation embed_on_axis(const CubeSpec& spec, const Permutation& g, unsigned axis) {
  std::uint64_t stride = 1;
  for (unsigned i = 0; i < axis; ++i) stride *= spec.d;
  Permutation out;
  out.image.resize(spec.n);
  for (std::uint64_t x = 0; x < spec.n; ++x) {
    const std::uint64_t digit = (x / stride) % spec.d;
    out.image[x] = static_cast<std::uint32_t>(x - digit * stride + g(static_cast<std::uint32_t>(digit)) * stride);
  }
  return out;
}

}  // namespace

CubeGenerators cube_embeddings(const CubeSpec& spec, std::span<const Permutation> base_gens,
                               std::span<const std::string> labels) {
  if (spec.n > kCubeLimit) throw Error(ErrorKind::CubeTooLarge, "n=" + std::to_string(spec.n));
  if (base_gens.empty()) throw Error(ErrorKind::InvalidArgument, "no base generators");
  for (const auto& g : base_gens) {
    if (g.size() != spec.d) throw Error(ErrorKind::InvalidArgument, "base action is not on d points");
    if (!g.is_even()) throw Error(ErrorKind::OddAction, "base generator is an odd permutation");
  }
  if (orbit(base_gens, 0).size() != spec.d) {
    throw Error(ErrorKind::InvalidArgument, "base action is not transitive");
  }

  CubeGenerators out;
  out.spec = spec;
  out.set.ambient = GroupHandle::alt(static_cast<std::uint32_t>(spec.n));
  for (unsigned axis = 0; axis < spec.m; ++axis) {
    std::vector<Permutation> images;
    for (std::size_t j = 0; j < base_gens.size(); ++j) images.push_back(embed_on_axis(spec, base_gens[j], axis));
    // pi_axis must be an injective homomorphism on the generators.
    for (std::size_t a = 0; a < base_gens.size(); ++a) {
      const bool image_trivial = images[a] == Permutation::identity(static_cast<std::uint32_t>(spec.n));
      const bool base_trivial = base_gens[a] == Permutation::identity(static_cast<std::uint32_t>(spec.d));
      if (image_trivial != base_trivial) {
        throw Error(ErrorKind::InvalidArgument, "axis embedding is not injective");
      }
      for (std::size_t b = 0; b < base_gens.size(); ++b) {
        if (images[a] * images[b] != embed_on_axis(spec, base_gens[a] * base_gens[b], axis)) {
          throw Error(ErrorKind::InvalidArgument, "axis embedding is not a homomorphism");
        }
      }
    }
    for (std::size_t j = 0; j < images.size(); ++j) {
      const std::string base_label = j < labels.size() ? labels[j] : "g" + std::to_string(j);
      out.set.elements.push_back({"pi" + std::to_string(axis) + "(" + base_label + ")", images[j]});
    }
    out.axis_images.push_back(std::move(images));
  }
  out.set = symmetric_closure(std::move(out.set));
  return out;
}

std::pair<std::vector<Permutation>, std::vector<std::string>> cube_base_action(unsigned k) {
  auto f2 = Field::make(2);
  const GeneratingSet el = elementary_set(3 * k, f2);
  const NonzeroVectors dom{f2, 3 * k};
  std::pair<std::vector<Permutation>, std::vector<std::string>> out;
  for (const auto& le : el.elements) {
    out.first.push_back(act_on_points(le.element, dom));
    out.second.push_back(le.label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// EL_3 over Mat_{k'}(F_2)^s

RingGenerators matrix_ring_generators(unsigned k_prime, unsigned s) {
  if (k_prime < 1 || s < 1) throw Error(ErrorKind::InvalidArgument, "k' and s must be positive");
  auto f2 = Field::make(2);
  const auto polys = monic_irreducibles(2, k_prime, s);
  if (polys.size() < s) throw Error(ErrorKind::SeparabilityViolated, std::to_string(s));

  RingGenerators g;
  g.size = k_prime;
  g.copies = s;
  g.r.assign(3, {});
  for (unsigned j = 0; j < s; ++j) {
    FieldMatrix companion = FieldMatrix::zero(f2, k_prime);
    for (unsigned i = 0; i + 1 < k_prime; ++i) companion(i + 1, i) = 1;
    for (unsigned i = 0; i < k_prime; ++i) companion(i, k_prime - 1) = f2->neg(polys[j][i]);
    g.r[0].push_back(companion);

    FieldMatrix shift = FieldMatrix::zero(f2, k_prime);
    shift(0, k_prime - 1) = 1;
    g.r[1].push_back(shift);

    FieldMatrix idem = FieldMatrix::zero(f2, k_prime);
    idem(0, 0) = 1;
    g.r[2].push_back(idem);
  }
  if (generated_subring_dimension(g) != static_cast<std::size_t>(k_prime) * k_prime * s) {
    throw Error(ErrorKind::SeparabilityViolated, std::to_string(s) + " (ring generators do not generate)");
  }
  return g;
}

std::size_t generated_subring_dimension(const RingGenerators& gens) {
  const unsigned k = gens.size;
  const unsigned s = gens.copies;
  const std::size_t bits = static_cast<std::size_t>(k) * k * s;
  using Elem = std::vector<FieldMatrix>;
  auto flatten = [&](const Elem& e) {
    std::vector<std::uint8_t> v;
    v.reserve(bits);
    for (const auto& m : e)
      for (auto x : m.entries) v.push_back(static_cast<std::uint8_t>(x));
    return v;
  };
  auto f2 = Field::make(2);

  // Row-echelon basis over F_2, keyed by pivot position.
  std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> basis;
  auto reduce_and_insert = [&](std::vector<std::uint8_t> v) {
    for (const auto& [pivot, row] : basis) {
      if (v[pivot]) for (std::size_t i = 0; i < bits; ++i) v[i] ^= row[i];
    }
    const auto it = std::find(v.begin(), v.end(), 1);
    if (it == v.end()) return false;
    const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    for (auto& [p, row] : basis) {
      if (row[pivot]) for (std::size_t i = 0; i < bits; ++i) row[i] ^= v[i];
    }
    basis.emplace_back(pivot, std::move(v));
    return true;
  };

  std::vector<Elem> queue;
  queue.push_back(Elem(s, FieldMatrix::identity(f2, k)));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    if (!reduce_and_insert(flatten(queue[i]))) continue;
    for (const auto& g : gens.r) {
      Elem prod(s, FieldMatrix::zero(f2, k));
      for (unsigned j = 0; j < s; ++j) prod[j] = g[j] * queue[i][j];
      queue.push_back(std::move(prod));
    }
  }
  return basis.size();
}

GroupElement el3_elementary(unsigned k_prime, std::span<const FieldMatrix> x, unsigned a, unsigned b) {
  if (a == b || a > 2 || b > 2) throw Error(ErrorKind::InvalidArgument, "elementary position");
  std::vector<GroupElement> parts;
  for (const auto& xj : x) {
    FieldMatrix m = FieldMatrix::identity(xj.field, 3 * k_prime);
    for (unsigned r = 0; r < k_prime; ++r)
      for (unsigned c = 0; c < k_prime; ++c) m(a * k_prime + r, b * k_prime + c) = xj(r, c);
    parts.emplace_back(std::move(m));
  }
  if (parts.size() == 1) return parts.front();
  return TupleElement{std::move(parts)};
}

GeneratingSet power_generators(unsigned k_prime, unsigned s) {
  const RingGenerators ring = matrix_ring_generators(k_prime, s);
  auto f2 = Field::make(2);
  GroupHandle sl = GroupHandle::sl(3 * k_prime, f2);
  GeneratingSet out{s == 1 ? sl : GroupHandle::direct_power(sl, s), {}, false};

  const std::vector<FieldMatrix> one(s, FieldMatrix::identity(f2, k_prime));
  auto pos = [](unsigned a, unsigned b) { return std::to_string(a + 1) + std::to_string(b + 1); };
  auto is_zero = [](const std::vector<FieldMatrix>& x) {
    return std::all_of(x.begin(), x.end(), [](const FieldMatrix& m) {
      return std::all_of(m.entries.begin(), m.entries.end(), [](Field::Value v) { return v == 0; });
    });
  };
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = 0; b < 3; ++b)
      if (a != b) out.elements.push_back({"E" + pos(a, b) + "(1)", el3_elementary(k_prime, one, a, b)});
  for (unsigned i = 0; i < ring.r.size(); ++i) {
    if (is_zero(ring.r[i])) continue;
    const std::string r = "r" + std::to_string(i + 1);
    out.elements.push_back({"E12(" + r + ")", el3_elementary(k_prime, ring.r[i], 0, 1)});
    out.elements.push_back({"E21(" + r + ")", el3_elementary(k_prime, ring.r[i], 1, 0)});
  }
  return symmetric_closure(std::move(out));
}

}  // namespace forge
