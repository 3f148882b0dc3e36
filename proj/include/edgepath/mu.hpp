#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgepath/groups.hpp"

namespace edgepath {

enum class MuProvenance { cyclic_shift, custom };

/// A permutation of a relation's tuples (by index) with declared order.
struct MuAction {
  std::vector<Vertex> perm;
  std::size_t order = 0;
  MuProvenance provenance = MuProvenance::custom;

  Vertex operator()(Vertex v) const { return perm[v]; }
  /// μ^k as a permutation (k may exceed the order).
  std::vector<Vertex> power(std::size_t k) const;
  /// Exact order of perm as a permutation.
  std::size_t permutation_order() const;
};

/// (a1,…,ar) ↦ (ar,a1,…,a_{r−1}) with order r. Throws Error if R is not shift-closed.
MuAction cyclic_shift_mu(const Relation& r);
/// Validates bijectivity, order > 1, and μ^order = id.
MuAction custom_mu(const Relation& r, std::vector<Vertex> perm, std::size_t order);
/// μ^{ℓ/p} for the smallest prime p dividing ℓ; identity when ℓ is prime.
MuAction reduce_to_prime_order(const MuAction& mu);

struct PeriodicWitness {
  Vertex tuple = 0;
  std::size_t shift = 0;
};

/// Some tuple with a_i = a_{(i+k) mod r} for all i, with k in [r−1].
std::optional<PeriodicWitness> find_periodic_tuple(const Relation& r);

struct ConditionReport {
  bool pass = true;
  std::string detail;
};

struct MuConditionReport {
  ConditionReport m1;
  ConditionReport m2;
  ConditionReport m3;
  /// Largest polymorphism arity checked exhaustively for (M2).
  std::size_t m2_arity = 0;
  std::size_t m2_checked = 0;
  bool m2_all_arities = false;

  bool pass() const { return m1.pass && m2.pass && m3.pass; }
};

/// Each maximal face maps into a face.
ConditionReport check_m1(const SimplicialComplex& h, const MuAction& mu);
/// μ^ℓ = id, and for i in [ℓ−1] no μ^i-orbit of a vertex lies inside a face.
ConditionReport check_m3(const SimplicialComplex& h, const MuAction& mu);
/// f(μ(t1),…,μ(tn)) = μ(f(t1,…,tn)) for all tuples of R^A.
ConditionReport check_m2(const SimplicialComplex& h_a, const SimplicialComplex& h_b,
                         const MuAction& mu_a, const MuAction& mu_b, const Polymorphism& f);

/// (M1) and (M3) on both sides, (M2) for every listed polymorphism. The orders of
/// mu_a and mu_b must agree.
MuConditionReport check_mu_conditions(const SimplicialComplex& h_a, const SimplicialComplex& h_b,
                                      const MuAction& mu_a, const MuAction& mu_b,
                                      std::span<const Polymorphism> polymorphisms);

struct MuConnectivity {
  bool connected = true;
  std::optional<Vertex> failing_vertex;
  /// Shortest path t -> μ(t) per vertex; empty for unreachable ones.
  std::vector<std::vector<Vertex>> paths;
};

MuConnectivity is_mu_connected(const ComplexGraph& g, const MuAction& mu);

struct MuCycle {
  Vertex base = 0;
  Vertex start = 0;
  std::vector<Vertex> prefix;   // base .. start
  std::vector<Vertex> segment;  // start .. μ(start)
  Cycle cycle;
  /// Index range of the prefix-free part inside cycle.vertices.
  std::size_t core_begin = 0;
  std::size_t core_end = 0;

  Cycle core() const;
};

/// P is the tree path base → start; the segment is a BFS shortest path start → μ(start).
MuCycle build_mu_cycle(const ComplexGraph& g, const SpanningTree& t, const MuAction& mu,
                       Vertex start);

struct Imbalance {
  Vertex u = 0;
  Vertex v = 0;
  std::size_t forward = 0;   // N(uv)
  std::size_t backward = 0;  // N(vu)
};

/// First canonical edge of the prefix-free cycle traversed unequally often in
/// the two directions.
std::optional<Imbalance> traversal_imbalance(const MuCycle& c);
std::optional<Imbalance> traversal_imbalance(const Cycle& core);

}  // namespace edgepath
