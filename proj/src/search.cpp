#include <cmath>

#include "forge/cayley.hpp"
#include "forge/gensets.hpp"
#include "forge/spectral.hpp"

namespace forge {

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, unsigned trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), trial};
  return std::mt19937_64(seq);
}

}  // namespace

ConjugatorSearch search_conjugator(const Torus& H, const FieldPtr& ambient, const SearchOptions& opts,
                                   const std::function<bool(const GroupElement&)>& accept) {
  if (opts.trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
  const unsigned d = H.d;
  const GroupHandle target = GroupHandle::sl(d, ambient);
  const SpectralOptions sopts{opts.tol, opts.max_iter, opts.seed, 0};

  ConjugatorSearch best{FieldMatrix::identity(ambient, d), {target, {}, true}};
  best.seed = opts.seed;
  best.trials = opts.trials;
  best.ambient_order = target.order.value_or(0);
  best.prime = ambient->characteristic();
  best.ramanujan_bound = 2.0 * std::sqrt(static_cast<double>(best.prime)) / (best.prime + 1.0);
  bool have = false;

  for (unsigned t = 0; t < opts.trials; ++t) {
    auto rng = trial_rng(opts.seed, t);
    const GroupElement c = random_special_linear(ambient, d, rng);
    GeneratingSet s = torus_conjugate_set(H, c);
    const CayleyGraph cay = build_cayley(s, opts.cap);
    const bool generates = cay.group.order() == best.ambient_order;
    double lambda = 1.0;
    if (generates && cay.graph.n > 1) lambda = lanczos_lambda2(cay.graph, sopts).lambda2;

    const bool better = !have || lambda < best.lambda2 ||
                        (lambda == best.lambda2 && c.key() < best.conjugator.key());
    if (!better) continue;
    if (generates && accept && !accept(c)) {
      if (have) continue;
      lambda = 1.0;
    }
    have = true;
    best.conjugator = c;
    best.set = std::move(s);
    best.lambda2 = lambda;
    best.generates = generates && lambda < 1.0;
    best.best_trial = t;
    best.graph_order = cay.group.order();
  }
  best.below_threshold = best.lambda2 < 19.0 / 20.0;
  best.ramanujan = best.lambda2 <= best.ramanujan_bound;
  return best;
}

ExtensionGenerators sl2_over_extension_plus_conjugator(const FieldPtr& q, unsigned m, const SearchOptions& c_opts,
                                                       const SearchOptions& d_opts) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  const auto p = q->characteristic();
  const FieldPtr big = m == 1 ? q : Field::make(p, q->degree() * m);

  const Torus small = nonsplit_torus(q, 2);
  ConjugatorSearch c_search = search_conjugator(small, big, c_opts);

  const GeneratingSet ab = sl2_standard(big);
  const GroupElement& a = ab.elements[0].element;
  const GroupElement& b = ab.elements[1].element;
  const GroupElement& c = c_search.conjugator;

  if (m == 1) {
    GeneratingSet set{GroupHandle::sl(2, q), {{"A", a}, {"B", b}, {"C", c}}, false};
    return {symmetric_closure(std::move(set)), std::move(c_search), std::nullopt, small};
  }

  // Norm-one elements of F_{q^{2m}} over F_q, through GL_2(q^m) into GL_{2m}(q).
  Torus big_torus;
  big_torus.base = q;
  big_torus.d = 2 * m;
  big_torus.ext = Field::make(p, q->degree() * 2 * m);
  {
    std::uint64_t order = 0, pw = 1;
    for (unsigned i = 0; i < 2 * m; ++i, pw *= q->order()) order += pw;
    if (order > (1u << 20)) throw Error(ErrorKind::TooLarge, "torus order " + std::to_string(order));
    const ExtensionBasis over_big(big, big_torus.ext);
    for (Field::Value x = 1; x < big_torus.ext->order(); ++x) {
      if (big_torus.ext->pow(x, order) != 1) continue;
      big_torus.norm_one.push_back(x);
      big_torus.elements.push_back(restriction_of_scalars(over_big.regular_matrix(x), q));
    }
  }

  const GroupElement ra = restriction_of_scalars(a, q);
  const GroupElement rb = restriction_of_scalars(b, q);
  const GroupElement rc = restriction_of_scalars(c, q);
  const auto target_order = GroupHandle::sl(2 * m, q).order;
  auto generates_with = [&](const GroupElement& dd) {
    const std::vector<GroupElement> gens{ra, rb, rc, dd};
    return enumerate_group(gens, d_opts.cap).order() == target_order;
  };
  ConjugatorSearch d_search = search_conjugator(big_torus, q, d_opts, generates_with);

  GeneratingSet set{GroupHandle::sl(2 * m, q),
                    {{"rho(A)", ra}, {"rho(B)", rb}, {"rho(C)", rc}, {"D", d_search.conjugator}},
                    false};
  return {symmetric_closure(std::move(set)), std::move(c_search), std::move(d_search), std::move(big_torus)};
}

}  // namespace forge
