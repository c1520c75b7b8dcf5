#include "forge/decomp.hpp"

#include <algorithm>

#include "forge/cayley.hpp"

namespace forge {

DecompositionReport product_cover_depth(const Enumeration& G, const std::string& target,
                                        const std::vector<Factor>& factors, std::uint32_t max_rounds) {
  if (G.order() > kDecompositionCap) throw Error(ErrorKind::CapExceeded, "|G|=" + std::to_string(G.order()));
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "no factors");

  DecompositionReport r;
  r.target = target;
  r.group_order = G.order();
  for (const auto& f : factors) r.factors.push_back(f.name);

  std::vector<std::vector<GroupElement>> moves;
  for (const auto& f : factors) {
    std::vector<GroupElement> m;
    for (const auto& g : f.generators) {
      m.push_back(g);
      m.push_back(inverse(g));
    }
    moves.push_back(std::move(m));
  }

  std::vector<char> in(G.order(), 0);
  std::vector<std::uint32_t> members{0};  // the identity; K_1 = 1 . K_1
  in[0] = 1;
  std::size_t stalled = 0;
  for (std::uint32_t t = 0; t < max_rounds; ++t) {
    const auto& m = moves[t % moves.size()];
    const std::size_t before = t == 0 ? 0 : members.size();
    for (std::size_t i = 0; i < members.size(); ++i) {
      const GroupElement& x = G.elements[members[i]];
      for (const auto& k : m) {
        const std::uint32_t y = G.at(compose(x, k));
        if (!in[y]) {
          in[y] = 1;
          members.push_back(y);
        }
      }
    }
    r.coverage_by_round.push_back(static_cast<double>(members.size()) / static_cast<double>(G.order()));
    if (members.size() == G.order()) {
      r.depth = t + 1;
      return r;
    }
    stalled = members.size() == before ? stalled + 1 : 0;
    if (stalled >= moves.size()) break;
  }
  throw Error(ErrorKind::NotCovered, std::to_string(max_rounds));
}

namespace {

std::uint32_t eccentricity_of_identity(const GeneratingSet& s, std::uint64_t cap) {
  const auto cay = build_cayley(s, cap);
  const auto dist = bfs_distances(cay.graph, 0);
  return *std::max_element(dist.begin(), dist.end());
}

}  // namespace

DecompositionReport elementary_word_length_max(unsigned d, const FieldPtr& field, std::uint64_t cap) {
  GeneratingSet roots{GroupHandle::sl(d, field), {}, false};
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j)
      if (i != j)
        for (Field::Value a = 1; a < field->order(); ++a)
          roots.elements.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1) + "(" + std::to_string(a) + ")",
                                    elementary_matrix(field, d, i, j, a)});
  roots.symmetric = true;

  DecompositionReport r;
  r.target = roots.ambient.name();
  r.group_order = roots.ambient.order.value_or(0);
  if (r.group_order == 0 || r.group_order > cap) throw Error(ErrorKind::CapExceeded, r.target);
  r.factors.push_back("root subgroups");
  r.max_word_length = eccentricity_of_identity(roots, cap);
  if (field->is_prime()) r.max_word_length_single = eccentricity_of_identity(elementary_set(d, field), cap);
  return r;
}

std::vector<RootStep> reduction_writer(const FieldMatrix& g) {
  const Field& f = *g.field;
  const std::size_t d = g.dim;
  if (determinant(g) != 1) throw Error(ErrorKind::InvalidArgument, "determinant is not 1");
  FieldMatrix m = g;
  std::vector<RootStep> ops;  // row operations L_1, L_2, ... applied on the left
  auto apply = [&](std::size_t i, std::size_t j, Field::Value a) {
    if (a == 0) return;
    for (std::size_t c = 0; c < d; ++c) m(i, c) = f.add(m(i, c), f.mul(a, m(j, c)));
    ops.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), a});
  };

  for (std::size_t c = 0; c + 1 < d; ++c) {
    if (m(c, c) == 0) {
      std::size_t r = c + 1;
      while (m(r, c) == 0) ++r;
      apply(c, r, 1);
    }
    if (m(c, c) != 1) {
      // row c+1 gets 1 - m(c,c) in column c, then is added to row c
      const Field::Value target = f.sub(1, m(c, c));
      apply(c + 1, c, f.div(f.sub(target, m(c + 1, c)), m(c, c)));
      apply(c, c + 1, 1);
    }
    for (std::size_t r = 0; r < d; ++r)
      if (r != c) apply(r, c, f.neg(m(r, c)));
  }
  if (d > 0) {
    const std::size_t c = d - 1;
    for (std::size_t r = 0; r < c; ++r) apply(r, c, f.neg(m(r, c)));
  }

  // L_t ... L_1 g = 1, so g = L_1^-1 ... L_t^-1
  std::vector<RootStep> word;
  word.reserve(ops.size());
  for (const auto& op : ops) word.push_back({op.i, op.j, f.neg(op.alpha)});
  return word;
}

FieldMatrix recompose(const std::vector<RootStep>& word, const FieldPtr& field, std::size_t d) {
  FieldMatrix out = FieldMatrix::identity(field, d);
  for (const auto& s : word) out = out * elementary_matrix(field, d, s.i, s.j, s.alpha);
  return out;
}

Factor sl2_block(const FieldPtr& field, unsigned d, unsigned i, unsigned j) {
  Factor f;
  f.name = "SL_2{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
  for (unsigned e = 0; e < field->degree(); ++e) {
    const Field::Value a = field->pow(field->generator(), e);
    f.generators.emplace_back(elementary_matrix(field, d, i, j, a));
    f.generators.emplace_back(elementary_matrix(field, d, j, i, a));
  }
  return f;
}

Factor sl_block(const FieldPtr& field, unsigned d, unsigned first, unsigned k) {
  if (first + k > d) throw Error(ErrorKind::InvalidArgument, "block outside the matrix");
  Factor f;
  f.name = "SL_" + std::to_string(k) + "[" + std::to_string(first + 1) + ".." + std::to_string(first + k) + "]";
  for (unsigned i = first; i < first + k; ++i)
    for (unsigned j = first; j < first + k; ++j)
      if (i != j)
        for (unsigned e = 0; e < field->degree(); ++e)
          f.generators.emplace_back(elementary_matrix(field, d, i, j, field->pow(field->generator(), e)));
  return f;
}

Factor conjugate_factor(const Factor& f, const GroupElement& h, const std::string& name) {
  Factor out{name, {}};
  for (const auto& g : f.generators) out.generators.push_back(conjugate(g, h));
  return out;
}

std::vector<Factor> sl3_five_copies(const FieldPtr& field) {
  const Factor k12 = sl2_block(field, 3, 0, 1);
  const Factor k23 = sl2_block(field, 3, 1, 2);
  return {k12, k23, sl2_block(field, 3, 0, 2),
          conjugate_factor(k12, elementary_matrix(field, 3, 0, 2, 1), k12.name + "^E13(1)"),
          conjugate_factor(k23, elementary_matrix(field, 3, 2, 0, 1), k23.name + "^E31(1)")};
}

Factor alt_window(std::uint32_t n, const std::vector<std::uint32_t>& window) {
  if (window.size() < 3) throw Error(ErrorKind::InvalidArgument, "window needs at least 3 points");
  Factor f;
  f.name = "Alt{" + std::to_string(window.front()) + ".." + std::to_string(window.back()) + "}";
  for (std::size_t i = 2; i < window.size(); ++i)
    f.generators.emplace_back(Permutation::from_cycles(n, {{window[0], window[1], window[i]}}));
  return f;
}

std::vector<std::vector<std::uint32_t>> default_windows(std::uint32_t n, std::uint32_t n_k) {
  if (n_k > n || n_k < 3) throw Error(ErrorKind::InvalidArgument, "need 3 <= n_k <= n");
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t start : {0u, n - n_k, (n - n_k) / 2}) {
    std::vector<std::uint32_t> w(n_k);
    for (std::uint32_t i = 0; i < n_k; ++i) w[i] = start + i;
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  return out;
}

DecompositionReport alt_product_cover(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& windows,
                                      std::uint32_t max_rounds) {
  if (n > kAltExactLimit) throw Error(ErrorKind::CapExceeded, "Alt(" + std::to_string(n) + ")");
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "n must be at least 3");
  std::vector<Factor> factors;
  for (const auto& w : windows) factors.push_back(alt_window(n, w));
  const Factor whole = alt_window(n, default_windows(n, n).front());
  const auto G = enumerate_group(whole.generators, kDecompositionCap);
  return product_cover_depth(G, GroupHandle::alt(n).name(), factors, max_rounds);
}

}  // namespace forge
