#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgepath/complexes.hpp"

namespace edgepath {

struct Letter {
  std::uint32_t gen = 0;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {gen, -sign}; }
  auto operator<=>(const Letter&) const = default;
};

using GroupWord = std::vector<Letter>;

GroupWord free_reduce(const GroupWord& w);
bool is_reduced(const GroupWord& w);
GroupWord inverse(const GroupWord& w);
GroupWord concat(const GroupWord& a, const GroupWord& b);
GroupWord power(const GroupWord& w, long k);
/// Words equal as free-group elements.
bool equal_in_free_group(const GroupWord& a, const GroupWord& b);
bool commute(const GroupWord& a, const GroupWord& b);
/// `e3^-1 e7 e7`; the empty word prints as `1`.
std::string to_string(const GroupWord& w, std::string_view prefix = "e");
/// Inverse of to_string.
GroupWord parse_word(std::string_view text, std::string_view prefix = "e");

/// Generator ids: canonical edge (u, v), u < v, has the graph's edge index, and
/// (v, u) is its inverse. Loops (t, t) come after all edges, as edge_count + t.
class EdgeAlphabet {
 public:
  EdgeAlphabet() = default;
  explicit EdgeAlphabet(const ComplexGraph& g);

  std::size_t edge_count() const { return endpoints_.size(); }
  std::size_t size() const { return endpoints_.size() + vertex_count_; }
  bool is_loop(std::uint32_t gen) const { return gen >= endpoints_.size(); }
  /// Letter for the step u -> v; throws Error when u, v are not adjacent.
  Letter letter(Vertex u, Vertex v) const;
  /// Oriented endpoints of a letter.
  std::pair<Vertex, Vertex> endpoints(Letter l) const;

 private:
  std::vector<std::pair<Vertex, Vertex>> endpoints_;
  std::vector<std::uint32_t> id_;  // n*n
  std::size_t vertex_count_ = 0;
};

/// Closed walk t1, ..., tk, t1; every step is an edge or a repeated vertex.
struct Cycle {
  std::vector<Vertex> vertices;

  Vertex base() const { return vertices.front(); }
  bool operator==(const Cycle&) const = default;
};

Cycle null_cycle(Vertex t);
/// Throws Error naming the first bad step.
void validate_cycle(const Cycle& c, const ComplexGraph& g);
/// C1 · C2 for cycles with a common base.
Cycle concat(const Cycle& a, const Cycle& b);
Cycle reverse(const Cycle& c);

enum class RelationKind { tree_edge, loop, triangle };

struct PresentationRelation {
  RelationKind kind;
  GroupWord relator;  // relator = 1
  std::vector<Vertex> vertices;
};

struct Presentation {
  Vertex root = 0;
  /// Canonical edge generators of the root's component, then loop generators.
  std::vector<std::uint32_t> generators;
  std::vector<PresentationRelation> relations;

  std::size_t count(RelationKind k) const;
};

/// (G1) per tree edge, (G2) per spanned vertex, (G3) per ordered triple of
/// distinct vertices sharing a face, as relator (uv)(vw)(wu).
Presentation build_presentation(const SimplicialComplex& h, const ComplexGraph& g,
                                const SpanningTree& t, const EdgeAlphabet& alphabet);
/// One `gen` line per generator and one `rel` line per relation.
std::string presentation_text(const Presentation& p, const EdgeAlphabet& alphabet);

GroupWord rho(const Cycle& c, const SpanningTree& t, const EdgeAlphabet& alphabet);
/// Based cycle splicing tree paths between consecutive letters.
Cycle gamma(const GroupWord& w, const SpanningTree& t, const EdgeAlphabet& alphabet);

/// Free basis when maximal faces pairwise share at most one vertex.
struct FreeBasis {
  struct FaceForest {
    std::size_t face = 0;
    std::vector<std::pair<Vertex, Vertex>> tree_edges;   // global-tree edges inside the face
    std::vector<std::pair<Vertex, Vertex>> extra_edges;  // completing a face spanning tree
  };

  std::vector<FaceForest> forests;
  /// Edge ids of the free generators, ascending.
  std::vector<std::uint32_t> generators;
  /// Per edge id: owning maximal face.
  std::vector<std::size_t> edge_face;
  /// Per face: parent links of its spanning tree (index into the face's vertices).
  std::vector<std::vector<long>> face_parent;
  std::vector<std::vector<long>> face_depth;

  std::size_t rank() const { return generators.size(); }
  bool is_generator(std::uint32_t gen) const;
};

/// Throws Error when two maximal faces inside the root's component share two vertices.
FreeBasis free_basis(const SimplicialComplex& h, const ComplexGraph& g, const SpanningTree& t,
                     const EdgeAlphabet& alphabet);

/// Rewrites a word over edge generators into the free basis, reduced.
GroupWord eta(const GroupWord& w, const FreeBasis& basis, const SimplicialComplex& h,
              const SpanningTree& t, const EdgeAlphabet& alphabet);

enum class Homotopy { null, not_null, undecided };
std::string to_string(Homotopy h);

/// Everything needed to reason about based cycles of one complex.
class EdgePathContext {
 public:
  /// Root defaults to vertex 0.
  explicit EdgePathContext(SimplicialComplex h, std::optional<Vertex> root = std::nullopt);

  const SimplicialComplex& complex() const { return h_; }
  const ComplexGraph& graph() const { return g_; }
  const SpanningTree& tree() const { return t_; }
  const EdgeAlphabet& alphabet() const { return alphabet_; }
  const FaceOverlap& overlap() const { return overlap_; }
  bool is_free_case() const { return basis_.has_value(); }
  const std::optional<FreeBasis>& basis() const { return basis_; }

  GroupWord rho(const Cycle& c) const;
  /// Reduced free-basis word; absent outside the free case.
  std::optional<GroupWord> reduced_word(const Cycle& c) const;
  Homotopy classify(const Cycle& c) const;
  Presentation presentation() const;

 private:
  SimplicialComplex h_;
  ComplexGraph g_;
  SpanningTree t_;
  EdgeAlphabet alphabet_;
  FaceOverlap overlap_;
  std::optional<FreeBasis> basis_;
};

Homotopy is_null_homotopic(const Cycle& c, const EdgePathContext& ctx);

struct Root {
  GroupWord root;
  long exponent = 0;
};

/// w = y s'^k y^-1 with |y| maximal and s' of minimal period; root = y s' y^-1.
/// Throws Error on the empty word.
Root primitive_root(const GroupWord& w);

struct CommonRoot {
  GroupWord root;
  std::vector<long> exponents;
};

/// Absent when some pair fails to commute. All-empty input yields the empty
/// root with zero exponents.
std::optional<CommonRoot> common_root(const std::vector<GroupWord>& words);

}  // namespace edgepath
