#pragma once

// JSON forms of fields, elements, generating sets and certificates.
// Matrices are row-major coefficient arrays next to their field spec,
// permutations are image arrays.

#include "json.hpp"

#include "forge/decomp.hpp"
#include "forge/spectral.hpp"

namespace forge {

using Json = nlohmann::ordered_json;

Json field_to_json(const Field& f);
FieldPtr field_from_json(const Json& j);

Json element_to_json(const GroupElement& g);
GroupElement element_from_json(const Json& j);

/// Element literals are included while the set holds at most
/// `max_entries` scalars in total.
Json generating_set_to_json(const GeneratingSet& s, std::size_t max_entries = 1u << 16);

Json to_json(const SpectralReport& r);
Json to_json(const ExpansionReport& r);
Json to_json(const DiameterReport& r);
Json to_json(const DecompositionReport& r);
Json to_json(const ConjugatorSearch& r);
Json to_json(const std::vector<Eigenvalue>& spectrum);

}  // namespace forge
