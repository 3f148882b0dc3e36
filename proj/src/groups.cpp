#include "edgepath/groups.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace edgepath {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::uint32_t kNoId = std::numeric_limits<std::uint32_t>::max();

}  // namespace

// ---------------------------------------------------------------- words

GroupWord free_reduce(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

bool is_reduced(const GroupWord& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i].gen == w[i - 1].gen && w[i].sign == -w[i - 1].sign) return false;
  }
  return true;
}

GroupWord inverse(const GroupWord& w) {
  GroupWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

GroupWord power(const GroupWord& w, long k) {
  const GroupWord base = k < 0 ? inverse(w) : w;
  GroupWord out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), base.begin(), base.end());
  return free_reduce(out);
}

bool equal_in_free_group(const GroupWord& a, const GroupWord& b) {
  return free_reduce(a) == free_reduce(b);
}

bool commute(const GroupWord& a, const GroupWord& b) {
  return free_reduce(concat(concat(a, b), concat(inverse(a), inverse(b)))).empty();
}

std::string to_string(const GroupWord& w, std::string_view prefix) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += prefix;
    out += std::to_string(l.gen);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

GroupWord parse_word(std::string_view text, std::string_view prefix) {
  GroupWord out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    if (tok.compare(0, prefix.size(), prefix) != 0) throw Error("bad word letter '" + tok + "'");
    std::string_view rest = std::string_view(tok).substr(prefix.size());
    int sign = 1;
    if (auto caret = rest.find('^'); caret != std::string_view::npos) {
      std::string_view exp = rest.substr(caret + 1);
      if (exp == "-1") {
        sign = -1;
      } else if (exp != "1") {
        throw Error("bad exponent in letter '" + tok + "'");
      }
      rest = rest.substr(0, caret);
    }
    std::uint32_t gen = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), gen);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty()) {
      throw Error("bad generator id in letter '" + tok + "'");
    }
    out.push_back({gen, sign});
  }
  return out;
}

// ---------------------------------------------------------------- alphabet and cycles

EdgeAlphabet::EdgeAlphabet(const ComplexGraph& g)
    : endpoints_(g.edges()), vertex_count_(g.vertex_count()) {
  id_.assign(vertex_count_ * vertex_count_, kNoId);
  for (std::size_t i = 0; i < endpoints_.size(); ++i) {
    auto [u, v] = endpoints_[i];
    id_[u * vertex_count_ + v] = id_[v * vertex_count_ + u] = static_cast<std::uint32_t>(i);
  }
}

Letter EdgeAlphabet::letter(Vertex u, Vertex v) const {
  if (u >= vertex_count_ || v >= vertex_count_) throw Error("letter: vertex out of range");
  if (u == v) return {static_cast<std::uint32_t>(endpoints_.size() + u), 1};
  std::uint32_t id = id_[u * vertex_count_ + v];
  if (id == kNoId) {
    throw Error("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                " share no face");
  }
  return {id, u < v ? 1 : -1};
}

std::pair<Vertex, Vertex> EdgeAlphabet::endpoints(Letter l) const {
  if (l.gen >= size()) throw Error("generator e" + std::to_string(l.gen) + " is out of range");
  if (is_loop(l.gen)) {
    auto t = static_cast<Vertex>(l.gen - endpoints_.size());
    return {t, t};
  }
  auto [u, v] = endpoints_[l.gen];
  return l.sign > 0 ? std::pair{u, v} : std::pair{v, u};
}

Cycle null_cycle(Vertex t) { return Cycle{{t, t}}; }

void validate_cycle(const Cycle& c, const ComplexGraph& g) {
  if (c.vertices.size() < 2) throw Error("a cycle needs at least two entries");
  if (c.vertices.front() != c.vertices.back()) throw Error("cycle is not closed");
  for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    Vertex u = c.vertices[i];
    Vertex v = c.vertices[i + 1];
    if (u >= g.vertex_count() || v >= g.vertex_count() || !g.step_ok(u, v)) {
      throw Error("cycle step " + std::to_string(i) + " (" + std::to_string(u) + " -> " +
                  std::to_string(v) + ") lies in no face");
    }
  }
}

Cycle concat(const Cycle& a, const Cycle& b) {
  if (a.base() != b.base()) throw Error("cycles have different base points");
  Cycle out = a;
  out.vertices.insert(out.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  return out;
}

Cycle reverse(const Cycle& c) {
  Cycle out = c;
  std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

// ---------------------------------------------------------------- presentation

std::size_t Presentation::count(RelationKind k) const {
  return static_cast<std::size_t>(std::count_if(
      relations.begin(), relations.end(), [k](const PresentationRelation& r) { return r.kind == k; }));
}

Presentation build_presentation(const SimplicialComplex& h, const ComplexGraph& g,
                                const SpanningTree& t, const EdgeAlphabet& alphabet) {
  Presentation p;
  p.root = t.root();
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (t.spans(g.edges()[i].first)) p.generators.push_back(static_cast<std::uint32_t>(i));
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (t.spans(v)) p.generators.push_back(alphabet.letter(v, v).gen);
  }
  for (auto [u, v] : t.edges()) {
    p.relations.push_back({RelationKind::tree_edge, {alphabet.letter(u, v)}, {u, v}});
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (t.spans(v)) p.relations.push_back({RelationKind::loop, {alphabet.letter(v, v)}, {v}});
  }
  std::set<std::tuple<Vertex, Vertex, Vertex>> triples;
  for (const auto& f : h.maximal_faces()) {
    if (f.size() < 3 || !t.spans(f.front())) continue;
    for (Vertex a : f) {
      for (Vertex b : f) {
        for (Vertex c : f) {
          if (a != b && b != c && a != c) triples.emplace(a, b, c);
        }
      }
    }
  }
  for (auto [a, b, c] : triples) {
    p.relations.push_back({RelationKind::triangle,
                           {alphabet.letter(a, b), alphabet.letter(b, c), alphabet.letter(c, a)},
                           {a, b, c}});
  }
  return p;
}

std::string presentation_text(const Presentation& p, const EdgeAlphabet& alphabet) {
  std::string out = "# root " + std::to_string(p.root) + "\n";
  for (std::uint32_t gen : p.generators) {
    auto [u, v] = alphabet.endpoints({gen, 1});
    out += "gen e" + std::to_string(gen) + " " + std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  for (const auto& r : p.relations) {
    const char* kind = r.kind == RelationKind::tree_edge ? "G1"
                       : r.kind == RelationKind::loop    ? "G2"
                                                         : "G3";
    out += std::string("rel ") + kind + " " + to_string(r.relator) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------- rho, gamma

GroupWord rho(const Cycle& c, const SpanningTree& t, const EdgeAlphabet& alphabet) {
  if (c.vertices.size() < 2 || c.vertices.front() != c.vertices.back()) {
    throw Error("rho: cycle is not closed");
  }
  if (c.base() != t.root()) {
    throw Error("rho: cycle is based at " + std::to_string(c.base()) + ", tree root is " +
                std::to_string(t.root()));
  }
  GroupWord w;
  w.reserve(c.vertices.size() - 1);
  for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    w.push_back(alphabet.letter(c.vertices[i], c.vertices[i + 1]));
  }
  return w;
}

Cycle gamma(const GroupWord& w, const SpanningTree& t, const EdgeAlphabet& alphabet) {
  Cycle c{{t.root()}};
  auto walk_to = [&](Vertex target) {
    auto p = t.path(c.vertices.back(), target);
    c.vertices.insert(c.vertices.end(), p.begin() + 1, p.end());
  };
  for (const Letter& l : w) {
    auto [u, v] = alphabet.endpoints(l);
    if (!t.spans(u)) throw Error("gamma: letter " + to_string(GroupWord{l}) + " leaves the component");
    walk_to(u);
    c.vertices.push_back(v);
  }
  walk_to(t.root());
  if (c.vertices.size() == 1) c.vertices.push_back(t.root());
  return c;
}

// ---------------------------------------------------------------- free basis

bool FreeBasis::is_generator(std::uint32_t gen) const {
  return std::binary_search(generators.begin(), generators.end(), gen);
}

FreeBasis free_basis(const SimplicialComplex& h, const ComplexGraph& g, const SpanningTree& t,
                     const EdgeAlphabet& alphabet) {
  FreeBasis b;
  b.edge_face.assign(g.edge_count(), kNone);
  b.face_parent.assign(h.face_count(), {});
  b.face_depth.assign(h.face_count(), {});
  for (std::size_t fi = 0; fi < h.face_count(); ++fi) {
    const auto& f = h.face(fi);
    if (!t.spans(f.front())) continue;
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        std::size_t e = *g.edge_index(f[i], f[j]);
        if (b.edge_face[e] != kNone) {
          throw Error("maximal faces " + std::to_string(b.edge_face[e]) + " and " +
                      std::to_string(fi) + " share the vertices " + std::to_string(f[i]) +
                      " and " + std::to_string(f[j]));
        }
        b.edge_face[e] = fi;
      }
    }

    FreeBasis::FaceForest forest;
    forest.face = fi;
    std::vector<std::size_t> uf(f.size());
    std::iota(uf.begin(), uf.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::vector<std::vector<std::size_t>> local(f.size());
    auto link = [&](std::size_t i, std::size_t j) {
      uf[find(i)] = find(j);
      local[i].push_back(j);
      local[j].push_back(i);
    };
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        if (t.is_tree_edge(f[i], f[j])) {
          forest.tree_edges.emplace_back(f[i], f[j]);
          link(i, j);
        }
      }
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        if (find(i) != find(j) && !t.is_tree_edge(f[i], f[j])) {
          forest.extra_edges.emplace_back(f[i], f[j]);
          b.generators.push_back(alphabet.letter(f[i], f[j]).gen);
          link(i, j);
        }
      }
    }

    auto& parent = b.face_parent[fi];
    auto& depth = b.face_depth[fi];
    parent.assign(f.size(), -1);
    depth.assign(f.size(), -1);
    depth[0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      std::sort(local[u].begin(), local[u].end());
      for (std::size_t v : local[u]) {
        if (depth[v] < 0) {
          depth[v] = depth[u] + 1;
          parent[v] = static_cast<long>(u);
          queue.push_back(v);
        }
      }
    }
    b.forests.push_back(std::move(forest));
  }
  std::sort(b.generators.begin(), b.generators.end());
  return b;
}

GroupWord eta(const GroupWord& w, const FreeBasis& basis, const SimplicialComplex& h,
              const SpanningTree& t, const EdgeAlphabet& alphabet) {
  GroupWord out;
  for (const Letter& l : w) {
    if (alphabet.is_loop(l.gen)) continue;
    if (l.gen >= basis.edge_face.size() || basis.edge_face[l.gen] == kNone) {
      throw Error("eta: edge e" + std::to_string(l.gen) + " has no owning face");
    }
    std::size_t fi = basis.edge_face[l.gen];
    const auto& f = h.face(fi);
    const auto& parent = basis.face_parent[fi];
    const auto& depth = basis.face_depth[fi];
    auto [u, v] = alphabet.endpoints(l);
    auto local = [&](Vertex x) {
      return static_cast<std::size_t>(std::lower_bound(f.begin(), f.end(), x) - f.begin());
    };
    std::vector<std::size_t> up{local(u)};
    std::vector<std::size_t> down{local(v)};
    while (depth[up.back()] > depth[down.back()]) up.push_back(static_cast<std::size_t>(parent[up.back()]));
    while (depth[down.back()] > depth[up.back()]) {
      down.push_back(static_cast<std::size_t>(parent[down.back()]));
    }
    while (up.back() != down.back()) {
      up.push_back(static_cast<std::size_t>(parent[up.back()]));
      down.push_back(static_cast<std::size_t>(parent[down.back()]));
    }
    down.pop_back();
    up.insert(up.end(), down.rbegin(), down.rend());
    for (std::size_t i = 0; i + 1 < up.size(); ++i) {
      Vertex a = f[up[i]];
      Vertex c = f[up[i + 1]];
      if (!t.is_tree_edge(a, c)) out.push_back(alphabet.letter(a, c));
    }
  }
  return free_reduce(out);
}

std::string to_string(Homotopy h) {
  switch (h) {
    case Homotopy::null:
      return "null-homotopic";
    case Homotopy::not_null:
      return "not null-homotopic";
    case Homotopy::undecided:
      return "undecided";
  }
  return "undecided";
}

// ---------------------------------------------------------------- context

EdgePathContext::EdgePathContext(SimplicialComplex h, std::optional<Vertex> root)
    : h_(std::move(h)), g_(h_) {
  if (h_.vertex_count() == 0) throw Error("complex has no vertices");
  t_ = SpanningTree(g_, root.value_or(0));
  alphabet_ = EdgeAlphabet(g_);
  overlap_ = max_pairwise_face_overlap(h_);
  if (overlap_.max_overlap <= 1) basis_ = free_basis(h_, g_, t_, alphabet_);
}

GroupWord EdgePathContext::rho(const Cycle& c) const {
  validate_cycle(c, g_);
  return edgepath::rho(c, t_, alphabet_);
}

std::optional<GroupWord> EdgePathContext::reduced_word(const Cycle& c) const {
  GroupWord w = rho(c);
  if (!basis_) return std::nullopt;
  return eta(w, *basis_, h_, t_, alphabet_);
}

Homotopy EdgePathContext::classify(const Cycle& c) const {
  auto w = reduced_word(c);
  if (!w) return Homotopy::undecided;
  return w->empty() ? Homotopy::null : Homotopy::not_null;
}

Presentation EdgePathContext::presentation() const {
  return build_presentation(h_, g_, t_, alphabet_);
}

Homotopy is_null_homotopic(const Cycle& c, const EdgePathContext& ctx) { return ctx.classify(c); }

// ---------------------------------------------------------------- roots

Root primitive_root(const GroupWord& input) {
  GroupWord w = free_reduce(input);
  if (w.empty()) throw Error("the empty word has no primitive root");
  const std::size_t n = w.size();
  std::size_t m = 0;
  while (2 * (m + 1) < n && w[m] == w[n - 1 - m].inverse()) ++m;
  GroupWord core(w.begin() + static_cast<long>(m), w.end() - static_cast<long>(m));
  const std::size_t len = core.size();
  std::size_t period = len;
  for (std::size_t p = 1; p < len; ++p) {
    if (len % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < len && ok; ++i) ok = core[i] == core[i - p];
    if (ok) {
      period = p;
      break;
    }
  }
  Root r;
  r.root.assign(w.begin(), w.begin() + static_cast<long>(m));
  r.root.insert(r.root.end(), core.begin(), core.begin() + static_cast<long>(period));
  r.root.insert(r.root.end(), w.end() - static_cast<long>(m), w.end());
  r.exponent = static_cast<long>(len / period);
  return r;
}

std::optional<CommonRoot> common_root(const std::vector<GroupWord>& words) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (!commute(words[i], words[j])) return std::nullopt;
    }
  }
  CommonRoot out;
  out.exponents.assign(words.size(), 0);
  GroupWord s;
  for (const auto& w : words) {
    if (!free_reduce(w).empty()) {
      s = primitive_root(w).root;
      break;
    }
  }
  if (s.empty()) return out;
  const GroupWord s_inv = inverse(s);
  for (std::size_t i = 0; i < words.size(); ++i) {
    GroupWord w = free_reduce(words[i]);
    if (w.empty()) continue;
    Root r = primitive_root(w);
    if (r.root == s) {
      out.exponents[i] = r.exponent;
    } else if (r.root == s_inv) {
      out.exponents[i] = -r.exponent;
    } else {
      return std::nullopt;
    }
  }
  out.root = std::move(s);
  return out;
}

}  // namespace edgepath
