#pragma once

#include <filesystem>

#include <json.hpp>

#include "edgepath/mu.hpp"
#include "edgepath/polymorphisms.hpp"

namespace edgepath {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);

/// Faces as arrays of tuple indices.
json faces_to_json(const SimplicialComplex& h);
std::vector<VertexSet> faces_from_json(const json& j);

/// {"order": ℓ, "permutation": [...]}.
json mu_to_json(const MuAction& mu);
MuAction mu_from_json(const json& j, const Relation& r);

/// {"arity", "source_size", "table"}; table maps tuple index to value index.
json polymorphism_to_json(const Polymorphism& f);
Polymorphism polymorphism_from_json(const json& j);

json cycle_to_json(const Cycle& c);
Cycle cycle_from_json(const json& j);

json structure_summary(const RelationalStructure& s);
/// Vertex list with tuple labels.
json vertices_to_json(const RelationalStructure& s, const Relation& r);

json presentation_to_json(const Presentation& p, const EdgeAlphabet& alphabet);
json free_basis_to_json(const EdgePathContext& ctx);

}  // namespace edgepath
