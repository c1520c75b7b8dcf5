#include "forge/report.hpp"

namespace forge {

Json field_to_json(const Field& f) {
  Json j;
  j["p"] = f.characteristic();
  j["k"] = f.degree();
  if (!f.is_prime()) j["modulus"] = f.modulus();
  return j;
}

FieldPtr field_from_json(const Json& j) {
  std::optional<std::vector<Field::Value>> modulus;
  if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<Field::Value>>();
  return Field::make(j.at("p").get<std::uint64_t>(), j.value("k", 1u), modulus);
}

Json element_to_json(const GroupElement& g) {
  Json j;
  if (g.is_matrix()) {
    const FieldMatrix& m = g.matrix();
    j["type"] = "matrix";
    j["field"] = field_to_json(*m.field);
    j["dim"] = m.dim;
    j["entries"] = m.entries;
  } else if (g.is_perm()) {
    j["type"] = "perm";
    j["image"] = g.perm().image;
  } else {
    j["type"] = "tuple";
    Json parts = Json::array();
    for (const auto& part : g.tuple().parts) parts.push_back(element_to_json(part));
    j["parts"] = std::move(parts);
  }
  return j;
}

GroupElement element_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "matrix") {
    FieldMatrix m{field_from_json(j.at("field")), j.at("dim").get<std::size_t>(),
                  j.at("entries").get<std::vector<Field::Value>>()};
    if (m.entries.size() != m.dim * m.dim) throw Error(ErrorKind::InvalidArgument, "matrix entry count");
    for (auto x : m.entries)
      if (x >= m.field->order()) throw Error(ErrorKind::InvalidArgument, "matrix entry outside the field");
    return m;
  }
  if (type == "perm") {
    Permutation p{j.at("image").get<std::vector<std::uint32_t>>()};
    std::vector<char> seen(p.size(), 0);
    for (auto x : p.image) {
      if (x >= p.size() || seen[x]) throw Error(ErrorKind::InvalidArgument, "image is not a permutation");
      seen[x] = 1;
    }
    return p;
  }
  if (type == "tuple") {
    TupleElement t;
    for (const auto& part : j.at("parts")) t.parts.push_back(element_from_json(part));
    return t;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown element type " + type);
}

namespace {

std::size_t scalar_count(const GroupElement& g) {
  if (g.is_matrix()) return g.matrix().entries.size();
  if (g.is_perm()) return g.perm().size();
  std::size_t n = 0;
  for (const auto& part : g.tuple().parts) n += scalar_count(part);
  return n;
}

}  // namespace

Json generating_set_to_json(const GeneratingSet& s, std::size_t max_entries) {
  Json j;
  j["ambient"] = s.ambient.name();
  j["size"] = s.size();
  j["symmetric"] = s.symmetric;
  std::size_t total = 0;
  for (const auto& le : s.elements) total += scalar_count(le.element);
  Json labels = Json::array();
  for (const auto& le : s.elements) labels.push_back(le.label);
  j["labels"] = std::move(labels);
  if (total <= max_entries) {
    Json elems = Json::array();
    for (const auto& le : s.elements) elems.push_back(element_to_json(le.element));
    j["elements"] = std::move(elems);
  } else {
    j["elements_omitted"] = true;
  }
  return j;
}

Json to_json(const SpectralReport& r) {
  Json j;
  j["n"] = r.n;
  j["degree"] = r.degree;
  j["lambda2"] = r.lambda2;
  j["lambda_min"] = r.lambda_min;
  j["gap"] = r.gap;
  j["method"] = to_string(r.method);
  if (r.method == SpectralMethod::Lanczos) {
    j["tol"] = r.tol;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["seed"] = r.seed;
  }
  return j;
}

Json to_json(const ExpansionReport& r) {
  Json j;
  j["epsilon_vertex"] = r.epsilon_vertex;
  j["vertex_boundary"] = r.vertex_boundary;
  j["vertex_witness"] = r.vertex_witness;
  j["h_edge"] = r.h_edge;
  j["edge_cut"] = r.edge_cut;
  j["edge_witness"] = r.edge_witness;
  j["exact"] = r.exact;
  j["vertex_transitive"] = r.vertex_transitive;
  return j;
}

Json to_json(const DiameterReport& r) {
  Json j;
  j["diameter"] = r.diameter;
  j["exact"] = r.exact;
  j["sources"] = r.sources;
  return j;
}

Json to_json(const DecompositionReport& r) {
  Json j;
  j["target"] = r.target;
  j["group_order"] = r.group_order;
  j["factors"] = r.factors;
  if (!r.coverage_by_round.empty()) {
    j["depth"] = r.depth;
    j["coverage_by_round"] = r.coverage_by_round;
  } else {
    j["max_word_length"] = r.max_word_length;
    if (r.max_word_length_single) j["max_word_length_single"] = r.max_word_length_single;
  }
  j["exact"] = r.exact;
  return j;
}

Json to_json(const ConjugatorSearch& r) {
  Json j;
  j["conjugator"] = element_to_json(r.conjugator);
  j["lambda2"] = r.lambda2;
  j["generates"] = r.generates;
  j["best_trial"] = r.best_trial;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["graph_order"] = r.graph_order;
  j["ambient_order"] = r.ambient_order;
  j["set_size"] = r.set.size();
  j["below_19_20"] = r.below_threshold;
  j["ramanujan_bound"] = r.ramanujan_bound;
  j["ramanujan"] = r.ramanujan;
  return j;
}

Json to_json(const std::vector<Eigenvalue>& spectrum) {
  Json j = Json::array();
  for (const auto& e : spectrum) j.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
  return j;
}

}  // namespace forge
