#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "edgepath/structures.hpp"

namespace edgepath {

/// Index of a vertex, i.e. of a tuple in the underlying relation.
using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate-free

inline constexpr std::size_t kDefaultToleranceCap = 10'000'000;

/// Q ⊆ R×R stored as a 0/1 matrix over tuple indices.
struct Tolerance {
  Relation base;
  Eigen::MatrixXi pairs;

  bool related(Vertex u, Vertex v) const { return pairs(u, v) != 0; }
  bool is_reflexive() const;
  bool is_symmetric() const;
};

/// Vertices are the tuples of a relation; faces are given by the maximal ones.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Keeps inclusion-maximal members, adds singletons for uncovered vertices,
  /// and sorts faces lexicographically. Throws Error on out-of-range vertices.
  SimplicialComplex(Relation vertices, std::vector<VertexSet> faces);

  const Relation& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<VertexSet>& maximal_faces() const { return faces_; }
  const VertexSet& face(std::size_t i) const { return faces_[i]; }
  std::size_t face_count() const { return faces_.size(); }
  /// Indices of maximal faces containing v, ascending.
  const std::vector<std::size_t>& faces_of(Vertex v) const { return faces_of_[v]; }

  /// First maximal face containing every vertex of s (any order, repeats allowed).
  std::optional<std::size_t> face_containing(std::span<const Vertex> s) const;
  bool is_face(std::span<const Vertex> s) const { return face_containing(s).has_value(); }
  std::optional<Vertex> vertex_of(std::span<const Element> tuple) const;

  bool operator==(const SimplicialComplex&) const = default;

 private:
  Relation vertices_;
  std::vector<VertexSet> faces_;
  std::vector<std::vector<std::size_t>> faces_of_;
};

Tolerance box_tolerance(const Relation& r, std::size_t cap = kDefaultToleranceCap);

/// Maximal cliques of (R, Q minus diagonal), lexicographically sorted. With
/// verify_box, each clique must equal the product of its coordinate
/// projections; otherwise Error is thrown.
std::vector<VertexSet> maximal_faces_from_tolerance(const Tolerance& q, bool verify_box = true);

SimplicialComplex build_box_complex(const Relation& r, std::size_t cap = kDefaultToleranceCap);
SimplicialComplex build_complex(const Relation& r, std::vector<VertexSet> faces);

/// Projections X_1..X_r of a vertex set; true iff the set equals X_1×…×X_r.
bool is_box(const Relation& r, std::span<const Vertex> face);

/// u ~ v iff u != v and some maximal face contains both.
class ComplexGraph {
 public:
  ComplexGraph() = default;
  explicit ComplexGraph(const SimplicialComplex& h);

  std::size_t vertex_count() const { return neighbors_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_[v]; }
  bool adjacent(Vertex u, Vertex v) const { return adjacency_[u * vertex_count() + v] != 0; }
  /// Adjacent or equal: one step of a walk.
  bool step_ok(Vertex u, Vertex v) const { return u == v || adjacent(u, v); }
  /// Canonical edges (u, v) with u < v, sorted.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const;

 private:
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::size_t> edge_id_;  // n*n, npos when absent
};

/// Component label per vertex; labels follow the smallest vertex of each component.
std::vector<std::size_t> connected_components(const ComplexGraph& g);
bool is_connected(const ComplexGraph& g);
/// BFS shortest path from s to t in canonical neighbor order; empty if unreachable.
std::vector<Vertex> shortest_path(const ComplexGraph& g, Vertex s, Vertex t);

class SpanningTree {
 public:
  SpanningTree() = default;
  /// BFS tree of the component of root, neighbors visited in index order.
  SpanningTree(const ComplexGraph& g, Vertex root);

  Vertex root() const { return root_; }
  bool spans(Vertex v) const { return depth_[v] >= 0; }
  std::optional<Vertex> parent(Vertex v) const;
  std::size_t spanned_count() const { return spanned_; }
  /// Canonical (min, max) tree edges, sorted.
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  bool is_tree_edge(Vertex u, Vertex v) const;
  /// Unique tree path u..v, both ends included.
  std::vector<Vertex> path(Vertex u, Vertex v) const;

 private:
  Vertex root_ = 0;
  std::vector<long> parent_;
  std::vector<long> depth_;
  std::size_t spanned_ = 0;
  std::vector<std::pair<Vertex, Vertex>> edges_;
};

struct FaceOverlap {
  std::size_t max_overlap = 0;
  /// First pair (canonical order) achieving max_overlap, if there are two faces.
  std::optional<std::pair<std::size_t, std::size_t>> faces;
  VertexSet common;
};

FaceOverlap max_pairwise_face_overlap(const SimplicialComplex& h);

struct StabilityReport {
  bool stable = true;
  std::size_t checked = 0;
  /// Offending face indices of H_A and their image vertices in H_B.
  std::vector<std::size_t> faces;
  VertexSet image;
  std::string reason;
};

/// For all n-tuples of maximal faces of h_a, the coordinatewise image must lie
/// in one face of h_b.
StabilityReport check_polymorphism_stable(const SimplicialComplex& h_a,
                                          const SimplicialComplex& h_b, const Polymorphism& f);

}  // namespace edgepath
