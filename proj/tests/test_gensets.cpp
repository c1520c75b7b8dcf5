#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "forge/cayley.hpp"
#include "forge/gensets.hpp"

using namespace forge;

namespace {

std::set<CanonicalKey> keys_of(const GeneratingSet& s) {
  std::set<CanonicalKey> out;
  for (const auto& le : s.elements) out.insert(le.element.key());
  return out;
}

void check_symmetric(const GeneratingSet& s) {
  const auto keys = keys_of(s);
  CHECK(keys.size() == s.size());
  for (const auto& le : s.elements) CHECK(keys.count(inverse(le.element).key()) == 1);
}

bool is_elementary_tuple(const GroupElement& g) {
  if (g.is_matrix()) return is_special(g);
  for (const auto& part : g.tuple().parts)
    if (!is_special(part)) return false;
  return true;
}

}  // namespace

TEST_CASE("torus orders") {
  const std::vector<std::pair<std::pair<std::uint64_t, unsigned>, unsigned>> cases{
      {{2, 2}, 3}, {{3, 2}, 4}, {{4, 2}, 5}, {{5, 2}, 6}, {{2, 3}, 7}, {{3, 3}, 13}};
  for (const auto& [qd, expected] : cases) {
    const auto [p, k] = *prime_power(qd.first);
    const Torus t = nonsplit_torus(Field::make(p, k), qd.second);
    CHECK(t.order() == expected);
    for (const auto& h : t.elements) {
      CHECK(h.matrix().dim == qd.second);
      CHECK(determinant(h.matrix()) == 1);
    }
    CHECK(enumerate_group(t.elements).order() == expected);
  }
  // (3,2): cyclic of order 4
  const Torus t = nonsplit_torus(Field::make(3), 2);
  std::set<std::uint64_t> orders;
  for (const auto& h : t.elements) orders.insert(element_order(h));
  CHECK(orders.count(4) == 1);

  CHECK_THROWS_AS(nonsplit_torus(Field::make(7), 3, 50), Error);
}

TEST_CASE("torus_conjugate_set") {
  auto f3 = Field::make(3);
  const Torus H = nonsplit_torus(f3, 2);
  CHECK(torus_conjugate_set(H, FieldMatrix::identity(f3, 2)).size() == 1);

  FieldMatrix minus = FieldMatrix::identity(f3, 2);
  for (auto& x : minus.entries) x = f3->neg(x);
  const auto central = torus_conjugate_set(H, minus);
  CHECK(central.size() == 1);
  CHECK(central.elements[0].element == GroupElement(minus));

  FieldMatrix a = FieldMatrix::identity(f3, 2);
  a(0, 1) = 1;
  // -I lies in H and conjugates trivially, so only |H/{+-I}| = 2 conjugates
  // of each of A, A^-1 appear
  const auto s = torus_conjugate_set(H, a);
  CHECK(s.size() == 4);
  check_symmetric(s);
  CHECK(enumerate_group(s.group_elements()).order() == 24);

  // torus over F_3 lifted into SL_2(F_9)
  auto f9 = Field::make(3, 2);
  std::mt19937_64 rng(3);
  const auto c = random_special_linear(f9, 2, rng);
  const auto lifted = torus_conjugate_set(H, c);
  CHECK(lifted.size() <= 2 * H.order());
  for (const auto& le : lifted.elements) CHECK(le.element.matrix().field->same_as(*f9));
}

TEST_CASE("random_special_linear is uniform on SL_2(F_3)") {
  auto f3 = Field::make(3);
  std::mt19937_64 rng(17);
  std::map<CanonicalKey, int> counts;
  const int draws = 24000;
  for (int i = 0; i < draws; ++i) {
    const GroupElement g = random_special_linear(f3, 2, rng);
    REQUIRE(is_special(g));
    ++counts[g.key()];
  }
  CHECK(counts.size() == 24);
  for (const auto& [key, c] : counts) {
    CHECK(c > 800);
    CHECK(c < 1200);
  }
}

TEST_CASE("search_conjugator is reproducible") {
  auto f5 = Field::make(5);
  const Torus H = nonsplit_torus(f5, 2);
  SearchOptions opts;
  opts.trials = 3;
  opts.seed = 42;
  const auto a = search_conjugator(H, f5, opts);
  const auto b = search_conjugator(H, f5, opts);
  CHECK(a.conjugator == b.conjugator);
  CHECK(a.lambda2 == b.lambda2);
  CHECK(a.best_trial == b.best_trial);
  CHECK(a.lambda2 <= 1.0);
  opts.trials = 1;
  const auto single = search_conjugator(H, f5, opts);
  CHECK(single.trials == 1);
  CHECK(single.best_trial == 0);
  CHECK(search_conjugator(H, f5, opts).conjugator == single.conjugator);
}

TEST_CASE("restriction of scalars from SL_2(F_4)") {
  auto f2 = Field::make(2);
  auto f4 = Field::make(2, 2);
  const GroupElement id2 = FieldMatrix::identity(f4, 2);
  CHECK(restriction_of_scalars(id2, f2) == GroupElement(FieldMatrix::identity(f2, 4)));

  FieldMatrix t = FieldMatrix::zero(f4, 2);
  t(0, 0) = t(1, 1) = f4->generator();
  const FieldMatrix rt = restriction_of_scalars(t, f2).matrix();
  // companion of x^2 + x + 1 on both diagonal blocks
  const std::vector<Field::Value> expect{0, 1, 0, 0,  //
                                         1, 1, 0, 0,  //
                                         0, 0, 0, 1,  //
                                         0, 0, 1, 1};
  CHECK(rt.entries == expect);

  const auto G = enumerate_group(elementary_set(2, f4).group_elements());
  REQUIRE(G.order() == 60);
  std::vector<GroupElement> images;
  std::set<CanonicalKey> image_keys;
  for (const auto& g : G.elements) {
    images.push_back(restriction_of_scalars(g, f2));
    CHECK(is_special(images.back()));
    image_keys.insert(images.back().key());
  }
  CHECK(image_keys.size() == 60);
  std::size_t checks = 0;
  for (std::size_t i = 0; i < G.order(); ++i) {
    for (std::size_t j = 0; j < G.order(); ++j) {
      REQUIRE(restriction_of_scalars(compose(G.elements[i], G.elements[j]), f2) == compose(images[i], images[j]));
      ++checks;
    }
    CHECK(restriction_of_scalars(inverse(G.elements[i]), f2) == inverse(images[i]));
  }
  CHECK(checks == 3600);
}

TEST_CASE("sl2_over_extension_plus_conjugator degenerates at m = 1") {
  SearchOptions opts;
  opts.trials = 2;
  const auto ext = sl2_over_extension_plus_conjugator(Field::make(3), 1, opts, opts);
  CHECK_FALSE(ext.d_search.has_value());
  CHECK(ext.set.size() <= 6);
  for (const auto& le : ext.set.elements) CHECK(le.element.matrix().dim == 2);
}

TEST_CASE("sl2_over_extension_plus_conjugator for (q, m) = (2, 2)") {
  SearchOptions opts;
  opts.trials = 4;
  const auto ext = sl2_over_extension_plus_conjugator(Field::make(2), 2, opts, opts);
  REQUIRE(ext.d_search.has_value());
  CHECK(ext.big_torus.order() == 15);
  CHECK(ext.set.size() <= 8);
  check_symmetric(ext.set);
  for (const auto& le : ext.set.elements) CHECK(is_special(le.element));
  CHECK(enumerate_group(ext.set.group_elements()).order() == 20160);
}

TEST_CASE("elementary_set") {
  auto f2 = Field::make(2);
  CHECK(elementary_set(2, f2).size() == 2);
  for (const auto& le : elementary_set(2, f2).elements) CHECK(inverse(le.element) == le.element);
  CHECK(elementary_set(3, Field::make(3)).size() == 12);
  CHECK(elementary_set(2, Field::make(2, 2)).size() == 4);

  const std::vector<std::tuple<unsigned, std::uint64_t, std::uint64_t>> orders{
      {2, 2, 6}, {2, 3, 24}, {3, 2, 168}, {3, 3, 5616}};
  for (const auto& [d, q, order] : orders) {
    const auto s = elementary_set(d, Field::make(q));
    check_symmetric(s);
    CHECK(enumerate_group(s.group_elements()).order() == order);
  }
}

TEST_CASE("cube embeddings, reduced") {
  auto [base, labels] = cube_base_action(1);
  REQUIRE(base.size() == 6);

  const auto m1 = cube_embeddings(CubeSpec::reduced_spec(7, 1), base, labels);
  std::set<CanonicalKey> base_keys;
  for (const auto& b : base) base_keys.insert(GroupElement(b).key());
  CHECK(keys_of(m1.set) == base_keys);

  const CubeSpec spec = CubeSpec::reduced_spec(7, 2);
  CHECK(spec.n == 49);
  const auto cube = cube_embeddings(spec, base, labels);
  CHECK(cube.set.size() <= 2 * base.size() * spec.m);
  std::vector<Permutation> perms;
  for (const auto& le : cube.set.elements) {
    perms.push_back(le.element.perm());
    CHECK(perms.back().is_even());
  }
  CHECK(orbit(perms, 0).size() == 49);

  for (unsigned axis = 0; axis < spec.m; ++axis) {
    for (const auto& p : cube.axis_images[axis]) {
      for (std::uint64_t x = 0; x < spec.n; ++x) {
        auto dx = cube_digits(spec, x);
        auto dy = cube_digits(spec, p(static_cast<std::uint32_t>(x)));
        for (unsigned i = 0; i < spec.m; ++i)
          if (i != axis) REQUIRE(dx[i] == dy[i]);
      }
    }
  }

  const std::vector<Permutation> odd{Permutation::from_cycles(3, {{0, 1}})};
  try {
    cube_embeddings(CubeSpec::reduced_spec(3, 2), odd);
    FAIL("expected OddAction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OddAction);
  }
  CHECK_THROWS_AS(CubeSpec::reduced_spec(7, 9), Error);
}

TEST_CASE("cube embeddings, full cube k = 1") {
  const CubeSpec spec = CubeSpec::full(1);
  CHECK(spec.d == 7);
  CHECK(spec.m == 6);
  CHECK(spec.n == 117649);
  auto [base, labels] = cube_base_action(1);
  const auto cube = cube_embeddings(spec, base, labels);
  CHECK(cube.set.size() == 36);
  CHECK_THROWS_AS(cube_embeddings(CubeSpec::full(2), base, labels), Error);
}

TEST_CASE("matrix ring generators") {
  const auto r = matrix_ring_generators(2, 1);
  CHECK(generated_subring_dimension(r) == 4);
  CHECK(generated_subring_dimension(matrix_ring_generators(1, 2)) == 2);
  CHECK(generated_subring_dimension(matrix_ring_generators(3, 2)) == 18);
  for (auto [k, s] : {std::pair{1u, 3u}, std::pair{2u, 2u}, std::pair{3u, 3u}}) {
    try {
      matrix_ring_generators(k, s);
      FAIL("expected SeparabilityViolated");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SeparabilityViolated);
    }
  }
}

TEST_CASE("power generators") {
  auto f2 = Field::make(2);
  CHECK(keys_of(power_generators(1, 1)) == keys_of(elementary_set(3, f2)));

  const auto s2 = power_generators(1, 2);
  CHECK(s2.size() <= 20);
  for (const auto& le : s2.elements) CHECK(is_elementary_tuple(le.element));
  CHECK(enumerate_group(s2.group_elements(), 30000).order() == 28224);

  for (auto [k, s] : {std::pair{2u, 1u}, std::pair{3u, 2u}, std::pair{4u, 3u}}) {
    const auto g = power_generators(k, s);
    CHECK(g.size() <= 20);
    check_symmetric(g);
  }
}

TEST_CASE("EL_3 over Mat_2(F_2): elementary matrices are reached by explicit words") {
  // Grow the sets X_ab = {x : E_ab(x) in <gens>} with the rules
  // E_ab(x) E_ab(y) = E_ab(x + y) and [E_ab(x), E_bc(y)] = E_ac(xy), checking
  // each rule on actual matrices.
  auto f2 = Field::make(2);
  const unsigned k = 2;
  const auto ring = matrix_ring_generators(k, 1);
  auto key = [](const FieldMatrix& m) { return m.entries; };
  std::map<std::pair<unsigned, unsigned>, std::map<std::vector<Field::Value>, FieldMatrix>> known;
  const FieldMatrix one = FieldMatrix::identity(f2, k);
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = 0; b < 3; ++b)
      if (a != b) known[{a, b}][key(one)] = one;
  for (const auto& r : ring.r) {
    known[{0, 1}][key(r[0])] = r[0];
    known[{1, 0}][key(r[0])] = r[0];
  }
  auto E = [&](const FieldMatrix& x, unsigned a, unsigned b) {
    return el3_elementary(k, std::span<const FieldMatrix>(&x, 1), a, b);
  };

  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = known;
    for (const auto& [pos, xs] : snapshot) {
      const auto [a, b] = pos;
      for (const auto& [kx, x] : xs) {
        for (const auto& [ky, y] : xs) {
          FieldMatrix sum = x + y;
          REQUIRE(compose(E(x, a, b), E(y, a, b)) == E(sum, a, b));
          grew |= known[pos].emplace(key(sum), sum).second;
        }
        for (unsigned c = 0; c < 3; ++c) {
          if (c == a || c == b) continue;
          for (const auto& [ky, y] : snapshot[{b, c}]) {
            const GroupElement g = E(x, a, b), h = E(y, b, c);
            const GroupElement comm = compose(compose(g, h), compose(inverse(g), inverse(h)));
            const FieldMatrix prod = x * y;
            REQUIRE(comm == E(prod, a, c));
            grew |= known[{a, c}].emplace(key(prod), prod).second;
          }
        }
      }
    }
  }
  for (const auto& [pos, xs] : known) CHECK(xs.size() == 16);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    FieldMatrix x = FieldMatrix::zero(f2, k);
    for (auto& v : x.entries) v = rng() & 1;
    CHECK(known[{0, 1}].count(key(x)) == 1);
  }
}
