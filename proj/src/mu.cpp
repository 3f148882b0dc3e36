#include "edgepath/mu.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace edgepath {

namespace {

std::string vertex_list(std::span<const Vertex> vs) {
  std::string out;
  for (Vertex v : vs) out += (out.empty() ? "" : " ") + std::to_string(v);
  return "{" + out + "}";
}

bool is_identity(const std::vector<Vertex>& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

}  // namespace

std::vector<Vertex> MuAction::power(std::size_t k) const {
  std::vector<Vertex> out(perm.size());
  std::iota(out.begin(), out.end(), Vertex{0});
  for (std::size_t s = 0; s < k; ++s) {
    for (auto& v : out) v = perm[v];
  }
  return out;
}

std::size_t MuAction::permutation_order() const {
  std::size_t order = 1;
  std::vector<bool> seen(perm.size(), false);
  for (Vertex s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (Vertex v = s; !seen[v]; v = perm[v]) {
      seen[v] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

MuAction cyclic_shift_mu(const Relation& r) {
  MuAction mu;
  mu.order = r.arity();
  mu.provenance = MuProvenance::cyclic_shift;
  mu.perm.resize(r.size());
  Tuple shifted(r.arity());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Tuple& t = r[i];
    shifted[0] = t.back();
    std::copy(t.begin(), t.end() - 1, shifted.begin() + 1);
    auto j = r.index_of(shifted);
    if (!j) throw Error("relation is not cyclic: the shift of tuple " + std::to_string(i) + " is missing");
    mu.perm[i] = static_cast<Vertex>(*j);
  }
  if (mu.order < 2) throw Error("the cyclic shift of a unary relation is the identity; order > 1 required");
  return mu;
}

MuAction custom_mu(const Relation& r, std::vector<Vertex> perm, std::size_t order) {
  if (perm.size() != r.size()) {
    throw Error("permutation has " + std::to_string(perm.size()) + " entries, relation has " +
                std::to_string(r.size()) + " tuples");
  }
  std::vector<bool> hit(perm.size(), false);
  for (Vertex v : perm) {
    if (v >= perm.size() || hit[v]) throw Error("mapping is not a permutation of the tuples");
    hit[v] = true;
  }
  if (order < 2) throw Error("order > 1 required: the action cannot be the identity");
  MuAction mu{std::move(perm), order, MuProvenance::custom};
  if (!is_identity(mu.power(order))) {
    throw Error("declared order " + std::to_string(order) + " does not annihilate the permutation");
  }
  return mu;
}

MuAction reduce_to_prime_order(const MuAction& mu) {
  std::size_t p = 2;
  while (mu.order % p != 0) ++p;
  if (p == mu.order) return mu;
  MuAction out = mu;
  out.perm = mu.power(mu.order / p);
  out.order = p;
  return out;
}

std::optional<PeriodicWitness> find_periodic_tuple(const Relation& r) {
  const std::size_t n = r.arity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t k = 1; k < n; ++k) {
      bool periodic = true;
      for (std::size_t j = 0; j < n && periodic; ++j) periodic = r[i][j] == r[i][(j + k) % n];
      if (periodic) return PeriodicWitness{static_cast<Vertex>(i), k};
    }
  }
  return std::nullopt;
}

ConditionReport check_m1(const SimplicialComplex& h, const MuAction& mu) {
  for (std::size_t fi = 0; fi < h.face_count(); ++fi) {
    VertexSet image;
    for (Vertex v : h.face(fi)) image.push_back(mu(v));
    if (!h.is_face(image)) {
      return {false, "face " + std::to_string(fi) + " " + vertex_list(h.face(fi)) +
                         " maps to " + vertex_list(image) + ", which is no face"};
    }
  }
  return {true, "all " + std::to_string(h.face_count()) + " maximal faces map into faces"};
}

ConditionReport check_m3(const SimplicialComplex& h, const MuAction& mu) {
  if (mu.order < 2) return {false, "order > 1 required"};
  if (!is_identity(mu.power(mu.order))) {
    return {false, "mu^" + std::to_string(mu.order) + " is not the identity"};
  }
  if (mu.provenance == MuProvenance::cyclic_shift) {
    bool boxes = std::all_of(h.maximal_faces().begin(), h.maximal_faces().end(),
                             [&](const VertexSet& f) { return is_box(h.vertices(), f); });
    if (boxes) {
      if (auto w = find_periodic_tuple(h.vertices())) {
        return {false, "periodic tuple " + std::to_string(w->tuple) + " (shift " +
                           std::to_string(w->shift) + ") is fixed by a proper power"};
      }
      return {true, "no periodic tuples; box faces are not fixed by mu^i, i < " +
                        std::to_string(mu.order)};
    }
  }
  for (std::size_t i = 1; i < mu.order; ++i) {
    auto p = mu.power(i);
    for (Vertex v = 0; v < h.vertex_count(); ++v) {
      VertexSet orbit{v};
      for (Vertex x = p[v]; x != v; x = p[x]) orbit.push_back(x);
      if (auto f = h.face_containing(orbit)) {
        std::sort(orbit.begin(), orbit.end());
        return {false, "mu^" + std::to_string(i) + " fixes the face " + vertex_list(orbit) +
                           " inside maximal face " + std::to_string(*f)};
      }
    }
  }
  return {true, "no mu^i-orbit lies in a face for i < " + std::to_string(mu.order)};
}

ConditionReport check_m2(const SimplicialComplex& h_a, const SimplicialComplex& h_b,
                         const MuAction& mu_a, const MuAction& mu_b, const Polymorphism& f) {
  const std::size_t n = f.arity();
  const std::size_t m = h_a.vertex_count();
  if (m == 0) return {true, ""};
  std::vector<Vertex> pick(n, 0);
  std::vector<const Tuple*> rows(n);
  std::vector<const Tuple*> moved(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      rows[i] = &h_a.vertices()[pick[i]];
      moved[i] = &h_a.vertices()[mu_a(pick[i])];
    }
    auto lhs = h_b.vertex_of(f.apply(moved));
    auto img = h_b.vertex_of(f.apply(rows));
    if (!lhs || !img || *lhs != mu_b(*img)) {
      return {false, "f(mu(t)) != mu(f(t)) at tuples " + vertex_list(pick)};
    }
    std::size_t i = 0;
    while (i < n && ++pick[i] == m) pick[i++] = 0;
    if (i == n) break;
  }
  return {true, ""};
}

MuConditionReport check_mu_conditions(const SimplicialComplex& h_a, const SimplicialComplex& h_b,
                                      const MuAction& mu_a, const MuAction& mu_b,
                                      std::span<const Polymorphism> polymorphisms) {
  MuConditionReport report;
  auto m1a = check_m1(h_a, mu_a);
  auto m1b = check_m1(h_b, mu_b);
  report.m1 = {m1a.pass && m1b.pass, "A: " + m1a.detail + "; B: " + m1b.detail};

  if (mu_a.order != mu_b.order) {
    report.m3 = {false, "orders differ: " + std::to_string(mu_a.order) + " on A, " +
                            std::to_string(mu_b.order) + " on B"};
  } else {
    auto m3a = check_m3(h_a, mu_a);
    auto m3b = check_m3(h_b, mu_b);
    report.m3 = {m3a.pass && m3b.pass, "A: " + m3a.detail + "; B: " + m3b.detail};
  }

  for (std::size_t k = 0; k < polymorphisms.size(); ++k) {
    const auto& f = polymorphisms[k];
    auto r = check_m2(h_a, h_b, mu_a, mu_b, f);
    ++report.m2_checked;
    report.m2_arity = std::max(report.m2_arity, f.arity());
    if (!r.pass) {
      report.m2 = {false, "polymorphism " + std::to_string(k) + " of arity " +
                              std::to_string(f.arity()) + ": " + r.detail};
      return report;
    }
  }
  report.m2_all_arities = mu_a.provenance == MuProvenance::cyclic_shift &&
                          mu_b.provenance == MuProvenance::cyclic_shift;
  report.m2.detail = "verified for " + std::to_string(report.m2_checked) +
                     " polymorphisms up to arity " + std::to_string(report.m2_arity);
  if (report.m2_all_arities) {
    report.m2.detail +=
        "; holds at every arity since polymorphisms act coordinatewise and the shift permutes "
        "coordinates";
  }
  return report;
}

MuConnectivity is_mu_connected(const ComplexGraph& g, const MuAction& mu) {
  MuConnectivity out;
  out.paths.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out.paths[v] = shortest_path(g, v, mu(v));
    if (out.paths[v].empty() && out.connected) {
      out.connected = false;
      out.failing_vertex = v;
    }
  }
  return out;
}

Cycle MuCycle::core() const {
  return Cycle{{cycle.vertices.begin() + static_cast<long>(core_begin),
                cycle.vertices.begin() + static_cast<long>(core_end) + 1}};
}

MuCycle build_mu_cycle(const ComplexGraph& g, const SpanningTree& t, const MuAction& mu,
                       Vertex start) {
  if (start >= g.vertex_count() || !t.spans(start)) {
    throw Error("mu-cycle start " + std::to_string(start) + " is not in the base component");
  }
  MuCycle c;
  c.base = t.root();
  c.start = start;
  c.prefix = t.path(c.base, start);
  c.segment = shortest_path(g, start, mu(start));
  if (c.segment.empty()) {
    throw Error("no path from vertex " + std::to_string(start) + " to its mu-image");
  }
  if (c.segment.size() < 2) throw Error("vertex " + std::to_string(start) + " is fixed by mu");

  auto& v = c.cycle.vertices;
  v = c.prefix;
  c.core_begin = v.size() - 1;
  std::vector<Vertex> image(c.segment.begin(), c.segment.end() - 1);
  for (std::size_t i = 0; i < mu.order; ++i) {
    v.insert(v.end(), image.begin() + (i == 0 ? 1 : 0), image.end());
    for (auto& x : image) x = mu(x);
  }
  v.push_back(start);
  c.core_end = v.size() - 1;
  v.insert(v.end(), c.prefix.rbegin() + 1, c.prefix.rend());
  return c;
}

std::optional<Imbalance> traversal_imbalance(const Cycle& core) {
  std::map<std::pair<Vertex, Vertex>, std::pair<std::size_t, std::size_t>> count;
  for (std::size_t i = 0; i + 1 < core.vertices.size(); ++i) {
    Vertex a = core.vertices[i];
    Vertex b = core.vertices[i + 1];
    if (a == b) continue;
    auto& c = count[{std::min(a, b), std::max(a, b)}];
    (a < b ? c.first : c.second) += 1;
  }
  for (const auto& [edge, c] : count) {
    if (c.first != c.second) return Imbalance{edge.first, edge.second, c.first, c.second};
  }
  return std::nullopt;
}

std::optional<Imbalance> traversal_imbalance(const MuCycle& c) { return traversal_imbalance(c.core()); }

}  // namespace edgepath
