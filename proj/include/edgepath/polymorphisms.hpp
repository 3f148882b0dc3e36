#pragma once

#include <optional>
#include <vector>

#include "edgepath/groups.hpp"

namespace edgepath {

struct PolymorphismOptions {
  /// Exceeding this many polymorphisms throws CapExceeded.
  std::size_t max_count = 10'000'000;
  /// Bound on |A|^n · |B|.
  std::size_t table_cap = 10'000'000;
  unsigned threads = 1;
};

/// Pol^(n)(A, B) in lexicographic table order.
std::vector<Polymorphism> enumerate_polymorphisms(const RelationalStructure& a,
                                                  const RelationalStructure& b, std::size_t n,
                                                  const PolymorphismOptions& options = {});

/// g(x_1..x_m) = f(x_{π(1)}, …, x_{π(n)}); pi holds 0-based targets in [0, m).
Polymorphism minor(const Polymorphism& f, const std::vector<std::size_t>& pi, std::size_t m);

Polymorphism as_polymorphism(const Homomorphism& h, std::size_t source_size);

/// A step of an f-path left every face of H^B.
class StabilityViolation : public Error {
 public:
  using Error::Error;
};

struct XiImage {
  std::size_t arity = 0;
  /// Reduced word of the i-th unit vector's image.
  std::vector<GroupWord> words;

  bool operator==(const XiImage&) const = default;
};

/// Builds ξ_C images: coordinate i walks once around C while the others stay
/// at C's first vertex; the walk is conjugated by the tree path from the root
/// of H^B. Requires the free case in H^B.
class XiContext {
 public:
  XiContext(SimplicialComplex h_a, EdgePathContext b, Cycle c);

  const SimplicialComplex& complex_a() const { return h_a_; }
  const EdgePathContext& context_b() const { return b_; }
  const Cycle& cycle() const { return c_; }

  /// Image vertices of an f-path; coords[s][j] is coordinate j at step s.
  std::vector<Vertex> apply_path(const Polymorphism& f,
                                 const std::vector<std::vector<Vertex>>& coords) const;
  /// P, path, P^-1 with P the tree path from the root; throws StabilityViolation
  /// on a step outside every face.
  Cycle based_cycle(const std::vector<Vertex>& path) const;
  /// The cycle C_i.
  Cycle coordinate_cycle(const Polymorphism& f, std::size_t i) const;
  XiImage xi(const Polymorphism& f) const;

 private:
  SimplicialComplex h_a_;
  ComplexGraph g_a_;
  EdgePathContext b_;
  Cycle c_;
};

/// xi(f^π)_i equals the reduced product of xi(f)_j over π(j) = i, ascending j.
bool check_minor_preservation(const XiImage& of_f, const XiImage& of_minor,
                              const std::vector<std::size_t>& pi);
bool check_minor_preservation(const XiContext& ctx, const Polymorphism& f,
                              const std::vector<std::size_t>& pi, std::size_t m);

struct NondegeneracyEntry {
  Homomorphism map;
  Cycle cycle;
  GroupWord word;
};

struct NondegeneracyReport {
  bool pass = true;
  std::vector<NondegeneracyEntry> entries;
  std::optional<std::size_t> first_failure;
};

/// For each unary homomorphism g, the cycle P, g(C), P^-1 must reduce to a non-empty word.
NondegeneracyReport check_nondegenerate(const XiContext& ctx,
                                        const std::vector<Homomorphism>& homs);

/// 0-based coordinates where changing one argument can change the value.
std::vector<std::size_t> essential_coordinates(const Polymorphism& f);
/// 0-based coordinates with a non-empty image word.
std::vector<std::size_t> essential_coordinates(const XiImage& img);

struct XiStructure {
  bool commuting = false;
  GroupWord root;
  std::vector<long> exponents;

  /// s != 1 and |c|_1 != 0.
  bool nontrivial() const;
};

XiStructure analyze_xi_structure(const XiImage& img);

/// All maps [n] -> [m] in lexicographic order.
std::vector<std::vector<std::size_t>> all_maps(std::size_t n, std::size_t m);

}  // namespace edgepath
