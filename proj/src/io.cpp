#include "edgepath/io.hpp"

#include <fstream>

namespace edgepath {

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open JSON file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

json faces_to_json(const SimplicialComplex& h) {
  json out = json::array();
  for (const auto& f : h.maximal_faces()) out.push_back(f);
  return out;
}

std::vector<VertexSet> faces_from_json(const json& j) {
  if (!j.is_array()) throw Error("faces must be a JSON array of index arrays");
  std::vector<VertexSet> out;
  for (const auto& f : j) {
    if (!f.is_array()) throw Error("each face must be an array of tuple indices");
    VertexSet s;
    for (const auto& v : f) {
      if (!v.is_number_unsigned()) throw Error("face entries must be non-negative integers");
      s.push_back(v.get<Vertex>());
    }
    out.push_back(std::move(s));
  }
  return out;
}

json mu_to_json(const MuAction& mu) {
  return {{"order", mu.order},
          {"permutation", mu.perm},
          {"provenance", mu.provenance == MuProvenance::cyclic_shift ? "shift" : "custom"}};
}

MuAction mu_from_json(const json& j, const Relation& r) {
  if (!j.is_object() || !j.contains("order") || !j.contains("permutation")) {
    throw Error("a custom action needs \"order\" and \"permutation\"");
  }
  return custom_mu(r, j.at("permutation").get<std::vector<Vertex>>(), j.at("order").get<std::size_t>());
}

json polymorphism_to_json(const Polymorphism& f) {
  return {{"arity", f.arity()}, {"source_size", f.source_size()}, {"table", f.table()}};
}

Polymorphism polymorphism_from_json(const json& j) {
  return Polymorphism(j.at("arity").get<std::size_t>(), j.at("source_size").get<std::size_t>(),
                      j.at("table").get<std::vector<Element>>());
}

json cycle_to_json(const Cycle& c) { return c.vertices; }

Cycle cycle_from_json(const json& j) { return Cycle{j.get<std::vector<Vertex>>()}; }

json structure_summary(const RelationalStructure& s) {
  json rels = json::array();
  for (const auto& r : s.relations()) {
    rels.push_back({{"name", r.name}, {"arity", r.relation.arity()}, {"size", r.relation.size()}});
  }
  return {{"name", s.name()}, {"domain", s.domain()}, {"relations", rels}};
}

json vertices_to_json(const RelationalStructure& s, const Relation& r) {
  json out = json::array();
  for (const auto& t : r) out.push_back(s.tuple_label(t));
  return out;
}

json presentation_to_json(const Presentation& p, const EdgeAlphabet& alphabet) {
  json gens = json::array();
  for (std::uint32_t g : p.generators) {
    auto [u, v] = alphabet.endpoints({g, 1});
    gens.push_back({{"id", "e" + std::to_string(g)}, {"from", u}, {"to", v}});
  }
  json rels = json::array();
  for (const auto& r : p.relations) {
    const char* kind = r.kind == RelationKind::tree_edge ? "G1"
                       : r.kind == RelationKind::loop    ? "G2"
                                                         : "G3";
    rels.push_back({{"kind", kind}, {"relator", to_string(r.relator)}});
  }
  return {{"root", p.root},
          {"generators", gens},
          {"relations", rels},
          {"counts",
           {{"G1", p.count(RelationKind::tree_edge)},
            {"G2", p.count(RelationKind::loop)},
            {"G3", p.count(RelationKind::triangle)}}}};
}

json free_basis_to_json(const EdgePathContext& ctx) {
  if (!ctx.basis()) {
    const auto& o = ctx.overlap();
    json w = json::object();
    if (o.faces) w = {{"faces", {o.faces->first, o.faces->second}}, {"common", o.common}};
    return {{"free", false}, {"max_overlap", o.max_overlap}, {"witness", w}};
  }
  const auto& b = *ctx.basis();
  json gens = json::array();
  for (std::uint32_t g : b.generators) {
    auto [u, v] = ctx.alphabet().endpoints({g, 1});
    gens.push_back({{"id", "e" + std::to_string(g)}, {"from", u}, {"to", v}, {"face", b.edge_face[g]}});
  }
  return {{"free", true},
          {"max_overlap", ctx.overlap().max_overlap},
          {"rank", b.rank()},
          {"root", ctx.tree().root()},
          {"generators", gens}};
}

}  // namespace edgepath
