#include "edgepath/complexes.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace edgepath {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool subset_of(const VertexSet& small, const VertexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

// ---------------------------------------------------------------- Tolerance

bool Tolerance::is_reflexive() const {
  for (Eigen::Index i = 0; i < pairs.rows(); ++i) {
    if (pairs(i, i) == 0) return false;
  }
  return true;
}

bool Tolerance::is_symmetric() const { return pairs == pairs.transpose(); }

Tolerance box_tolerance(const Relation& r, std::size_t cap) {
  const std::size_t n = r.size();
  const std::size_t arity = r.arity();
  double work = static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t k = 2; k <= arity; ++k) work *= static_cast<double>(k);
  if (work > static_cast<double>(cap)) {
    throw CapExceeded("tolerance size r!*|R|^2 = " + std::to_string(static_cast<long double>(work)) +
                      " exceeds cap " + std::to_string(cap));
  }
  const auto size = static_cast<Eigen::Index>(n);

  // Q_i: tuples agreeing outside coordinate i.
  std::vector<Eigen::MatrixXi> q(arity, Eigen::MatrixXi::Zero(size, size));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t diff = 0;
      std::size_t where = 0;
      for (std::size_t j = 0; j < arity; ++j) {
        if (r[a][j] != r[b][j]) {
          ++diff;
          where = j;
        }
      }
      if (diff == 0) {
        for (auto& m : q) m(a, b) = 1;
      } else if (diff == 1) {
        q[where](a, b) = 1;
      }
    }
  }

  // Intersect Q_{π(1)}∘…∘Q_{π(r)} over all π, sharing products along common prefixes.
  Eigen::MatrixXi result = Eigen::MatrixXi::Ones(size, size);
  std::vector<bool> used(arity, false);
  auto extend = [&](auto& self, const Eigen::MatrixXi& prefix, std::size_t depth) -> void {
    if (depth == arity) {
      result = result.cwiseMin(prefix);
      return;
    }
    for (std::size_t j = 0; j < arity; ++j) {
      if (used[j]) continue;
      used[j] = true;
      Eigen::MatrixXi next = (prefix * q[j]).cwiseMin(1);
      self(self, next, depth + 1);
      used[j] = false;
    }
  };
  extend(extend, Eigen::MatrixXi::Identity(size, size), 0);
  return Tolerance{r, std::move(result)};
}

std::vector<VertexSet> maximal_faces_from_tolerance(const Tolerance& q, bool verify_box) {
  const auto n = static_cast<Vertex>(q.base.size());
  std::vector<VertexSet> adj(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v && q.related(u, v)) adj[u].push_back(v);
    }
  }
  auto meet = [](const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  };

  std::vector<VertexSet> cliques;
  VertexSet current;
  auto bron_kerbosch = [&](auto& self, VertexSet p, VertexSet x) -> void {
    if (p.empty() && x.empty()) {
      cliques.push_back(normalized(current));
      return;
    }
    Vertex pivot = p.empty() ? x.front() : p.front();
    std::size_t best = 0;
    for (const VertexSet* side : {&p, &x}) {
      for (Vertex u : *side) {
        std::size_t c = meet(p, adj[u]).size();
        if (c > best) {
          best = c;
          pivot = u;
        }
      }
    }
    VertexSet candidates;
    std::set_difference(p.begin(), p.end(), adj[pivot].begin(), adj[pivot].end(),
                        std::back_inserter(candidates));
    for (Vertex v : candidates) {
      current.push_back(v);
      self(self, meet(p, adj[v]), meet(x, adj[v]));
      current.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.insert(std::upper_bound(x.begin(), x.end(), v), v);
    }
  };
  VertexSet all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  if (n > 0) bron_kerbosch(bron_kerbosch, all, {});
  std::sort(cliques.begin(), cliques.end());

  if (verify_box) {
    for (const auto& c : cliques) {
      if (!is_box(q.base, c)) {
        std::string text;
        for (Vertex v : c) text += (text.empty() ? "" : " ") + std::to_string(v);
        throw Error("maximal class {" + text + "} is not a product of its projections");
      }
    }
  }
  return cliques;
}

bool is_box(const Relation& r, std::span<const Vertex> face) {
  if (face.empty()) return false;
  double product = 1;
  for (std::size_t j = 0; j < r.arity(); ++j) {
    std::vector<Element> proj;
    for (Vertex v : face) proj.push_back(r[v][j]);
    std::sort(proj.begin(), proj.end());
    proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
    product *= static_cast<double>(proj.size());
  }
  // The face lies inside the product, so equal sizes mean equality.
  VertexSet distinct(face.begin(), face.end());
  distinct = normalized(std::move(distinct));
  return product == static_cast<double>(distinct.size());
}

// ---------------------------------------------------------------- SimplicialComplex

SimplicialComplex::SimplicialComplex(Relation vertices, std::vector<VertexSet> faces)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  for (auto& f : faces) {
    f = normalized(std::move(f));
    if (f.empty()) throw Error("empty face");
    if (f.back() >= n) {
      throw Error("face refers to vertex " + std::to_string(f.back()) + " but the relation has " +
                  std::to_string(n) + " tuples");
    }
  }
  // Longest first, so each face only needs checking against kept ones.
  std::sort(faces.begin(), faces.end(), [](const VertexSet& a, const VertexSet& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::vector<bool> covered(n, false);
  for (auto& f : faces) {
    bool dominated = std::any_of(faces_.begin(), faces_.end(),
                                 [&](const VertexSet& kept) { return subset_of(f, kept); });
    if (dominated) continue;
    for (Vertex v : f) covered[v] = true;
    faces_.push_back(std::move(f));
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) faces_.push_back({v});
  }
  std::sort(faces_.begin(), faces_.end());
  faces_of_.assign(n, {});
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    for (Vertex v : faces_[i]) faces_of_[v].push_back(i);
  }
}

std::optional<std::size_t> SimplicialComplex::face_containing(std::span<const Vertex> s) const {
  if (s.empty()) return std::nullopt;
  for (Vertex v : s) {
    if (v >= vertex_count()) return std::nullopt;
  }
  for (std::size_t i : faces_of_[s.front()]) {
    const auto& f = faces_[i];
    bool all = std::all_of(s.begin(), s.end(),
                           [&](Vertex v) { return std::binary_search(f.begin(), f.end(), v); });
    if (all) return i;
  }
  return std::nullopt;
}

std::optional<Vertex> SimplicialComplex::vertex_of(std::span<const Element> tuple) const {
  auto i = vertices_.index_of(tuple);
  if (!i) return std::nullopt;
  return static_cast<Vertex>(*i);
}

SimplicialComplex build_box_complex(const Relation& r, std::size_t cap) {
  return SimplicialComplex(r, maximal_faces_from_tolerance(box_tolerance(r, cap), true));
}

SimplicialComplex build_complex(const Relation& r, std::vector<VertexSet> faces) {
  return SimplicialComplex(r, std::move(faces));
}

// ---------------------------------------------------------------- ComplexGraph

ComplexGraph::ComplexGraph(const SimplicialComplex& h) {
  const std::size_t n = h.vertex_count();
  neighbors_.assign(n, {});
  adjacency_.assign(n * n, 0);
  edge_id_.assign(n * n, kNone);
  for (const auto& f : h.maximal_faces()) {
    for (Vertex u : f) {
      for (Vertex v : f) {
        if (u != v) adjacency_[u * n + v] = 1;
      }
    }
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (adjacency_[u * n + v] == 0) continue;
      neighbors_[u].push_back(v);
      if (u < v) {
        edge_id_[u * n + v] = edge_id_[v * n + u] = edges_.size();
        edges_.emplace_back(u, v);
      }
    }
  }
}

std::optional<std::size_t> ComplexGraph::edge_index(Vertex u, Vertex v) const {
  const std::size_t n = vertex_count();
  if (u >= n || v >= n) return std::nullopt;
  std::size_t id = edge_id_[u * n + v];
  if (id == kNone) return std::nullopt;
  return id;
}

std::vector<std::size_t> connected_components(const ComplexGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> label(n, kNone);
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != kNone) continue;
    label[s] = s;
    std::deque<Vertex> queue{s};
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex v : g.neighbors(u)) {
        if (label[v] == kNone) {
          label[v] = s;
          queue.push_back(v);
        }
      }
    }
  }
  return label;
}

bool is_connected(const ComplexGraph& g) {
  auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](std::size_t l) { return l == 0; });
}

std::vector<Vertex> shortest_path(const ComplexGraph& g, Vertex s, Vertex t) {
  const std::size_t n = g.vertex_count();
  if (s >= n || t >= n) throw Error("shortest_path: vertex out of range");
  std::vector<long> prev(n, -1);
  prev[s] = s;
  std::deque<Vertex> queue{s};
  while (!queue.empty() && prev[t] < 0) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : g.neighbors(u)) {
      if (prev[v] < 0) {
        prev[v] = u;
        queue.push_back(v);
      }
    }
  }
  if (prev[t] < 0) return {};
  std::vector<Vertex> path{t};
  while (path.back() != s) path.push_back(static_cast<Vertex>(prev[path.back()]));
  std::reverse(path.begin(), path.end());
  return path;
}

// ---------------------------------------------------------------- SpanningTree

SpanningTree::SpanningTree(const ComplexGraph& g, Vertex root) : root_(root) {
  const std::size_t n = g.vertex_count();
  if (root >= n) throw Error("spanning tree root " + std::to_string(root) + " is not a vertex");
  parent_.assign(n, -1);
  depth_.assign(n, -1);
  depth_[root] = 0;
  spanned_ = 1;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : g.neighbors(u)) {
      if (depth_[v] >= 0) continue;
      depth_[v] = depth_[u] + 1;
      parent_[v] = u;
      ++spanned_;
      edges_.emplace_back(std::min(u, v), std::max(u, v));
      queue.push_back(v);
    }
  }
  std::sort(edges_.begin(), edges_.end());
}

std::optional<Vertex> SpanningTree::parent(Vertex v) const {
  if (parent_[v] < 0) return std::nullopt;
  return static_cast<Vertex>(parent_[v]);
}

bool SpanningTree::is_tree_edge(Vertex u, Vertex v) const {
  if (u >= parent_.size() || v >= parent_.size() || u == v) return false;
  return parent_[u] == static_cast<long>(v) || parent_[v] == static_cast<long>(u);
}

std::vector<Vertex> SpanningTree::path(Vertex u, Vertex v) const {
  if (u >= depth_.size() || v >= depth_.size() || !spans(u) || !spans(v)) {
    throw Error("tree path between vertices outside the spanned component");
  }
  std::vector<Vertex> up{u};
  std::vector<Vertex> down{v};
  while (depth_[up.back()] > depth_[down.back()]) up.push_back(static_cast<Vertex>(parent_[up.back()]));
  while (depth_[down.back()] > depth_[up.back()]) {
    down.push_back(static_cast<Vertex>(parent_[down.back()]));
  }
  while (up.back() != down.back()) {
    up.push_back(static_cast<Vertex>(parent_[up.back()]));
    down.push_back(static_cast<Vertex>(parent_[down.back()]));
  }
  down.pop_back();
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

// ---------------------------------------------------------------- statistics

FaceOverlap max_pairwise_face_overlap(const SimplicialComplex& h) {
  FaceOverlap out;
  const auto& faces = h.maximal_faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      VertexSet common;
      std::set_intersection(faces[i].begin(), faces[i].end(), faces[j].begin(), faces[j].end(),
                            std::back_inserter(common));
      if (!out.faces || common.size() > out.max_overlap) {
        out.max_overlap = common.size();
        out.faces = std::make_pair(i, j);
        out.common = std::move(common);
      }
    }
  }
  return out;
}

StabilityReport check_polymorphism_stable(const SimplicialComplex& h_a,
                                          const SimplicialComplex& h_b, const Polymorphism& f) {
  StabilityReport report;
  const std::size_t n = f.arity();
  const std::size_t nfaces = h_a.face_count();
  if (n == 0 || nfaces == 0) return report;
  std::vector<std::size_t> pick(n, 0);
  std::vector<const Tuple*> rows(n);
  std::vector<std::size_t> member(n);
  while (true) {
    VertexSet image;
    std::fill(member.begin(), member.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) rows[i] = &h_a.vertices()[h_a.face(pick[i])[member[i]]];
      Tuple t = f.apply(rows);
      auto v = h_b.vertex_of(t);
      if (!v) {
        report.stable = false;
        report.faces = pick;
        report.reason = "image tuple lies outside the target relation";
        return report;
      }
      image.push_back(*v);
      std::size_t i = 0;
      while (i < n && ++member[i] == h_a.face(pick[i]).size()) member[i++] = 0;
      if (i == n) break;
    }
    image = normalized(std::move(image));
    ++report.checked;
    if (!h_b.is_face(image)) {
      report.stable = false;
      report.faces = pick;
      report.image = std::move(image);
      report.reason = "image is contained in no face";
      return report;
    }
    std::size_t i = 0;
    while (i < n && ++pick[i] == nfaces) pick[i++] = 0;
    if (i == n) break;
  }
  return report;
}

}  // namespace edgepath
