#include "edgepath/polymorphisms.hpp"

#include <algorithm>

namespace edgepath {

std::vector<Polymorphism> enumerate_polymorphisms(const RelationalStructure& a,
                                                  const RelationalStructure& b, std::size_t n,
                                                  const PolymorphismOptions& options) {
  require_similar(a, b);
  if (n == 0) throw Error("polymorphism arity must be positive");
  double space = static_cast<double>(b.domain_size());
  for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(a.domain_size());
  if (space > static_cast<double>(options.table_cap)) {
    throw CapExceeded("table space |A|^" + std::to_string(n) + "*|B| exceeds cap " +
                      std::to_string(options.table_cap));
  }
  RelationalStructure power = direct_power(a, n, options.table_cap);
  SearchOptions search;
  search.max_results = options.max_count;
  search.threads = options.threads;
  auto homs = enumerate_homomorphisms(power, b, search);
  std::vector<Polymorphism> out;
  out.reserve(homs.size());
  for (auto& h : homs) out.emplace_back(n, a.domain_size(), std::move(h.map));
  return out;
}

Polymorphism minor(const Polymorphism& f, const std::vector<std::size_t>& pi, std::size_t m) {
  if (pi.size() != f.arity()) throw Error("minor map has the wrong length");
  for (std::size_t j : pi) {
    if (j >= m) throw Error("minor map leaves [m]");
  }
  const std::size_t d = f.source_size();
  std::size_t size = 1;
  for (std::size_t i = 0; i < m; ++i) size *= d;
  std::vector<Element> table(size);
  Tuple x(m, 0);
  Tuple y(f.arity());
  for (std::size_t idx = 0; idx < size; ++idx) {
    for (std::size_t j = 0; j < pi.size(); ++j) y[j] = x[pi[j]];
    table[idx] = f(y);
    for (std::size_t k = m; k-- > 0;) {
      if (++x[k] < d) break;
      x[k] = 0;
    }
  }
  return Polymorphism(m, d, std::move(table));
}

Polymorphism as_polymorphism(const Homomorphism& h, std::size_t source_size) {
  return Polymorphism(1, source_size, h.map);
}

// ---------------------------------------------------------------- xi

XiContext::XiContext(SimplicialComplex h_a, EdgePathContext b, Cycle c)
    : h_a_(std::move(h_a)), g_a_(h_a_), b_(std::move(b)), c_(std::move(c)) {
  validate_cycle(c_, g_a_);
  if (!b_.is_free_case()) {
    throw Error("xi needs the free case: two maximal faces of H^B share " +
                std::to_string(b_.overlap().max_overlap) + " vertices");
  }
}

std::vector<Vertex> XiContext::apply_path(const Polymorphism& f,
                                          const std::vector<std::vector<Vertex>>& coords) const {
  std::vector<Vertex> out;
  out.reserve(coords.size());
  std::vector<const Tuple*> rows(f.arity());
  for (std::size_t s = 0; s < coords.size(); ++s) {
    if (coords[s].size() != f.arity()) throw Error("f-path step has the wrong number of coordinates");
    for (std::size_t j = 0; j < rows.size(); ++j) rows[j] = &h_a_.vertices()[coords[s][j]];
    auto v = b_.complex().vertex_of(f.apply(rows));
    if (!v) {
      throw StabilityViolation("f-path step " + std::to_string(s) +
                               " maps outside the target relation");
    }
    out.push_back(*v);
  }
  return out;
}

Cycle XiContext::based_cycle(const std::vector<Vertex>& path) const {
  const auto& t = b_.tree();
  if (path.empty()) throw Error("empty f-path");
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    if (!b_.graph().step_ok(path[s], path[s + 1])) {
      throw StabilityViolation("f-path step " + std::to_string(s) + " (" +
                               std::to_string(path[s]) + " -> " + std::to_string(path[s + 1]) +
                               ") lies in no face of H^B");
    }
  }
  if (!t.spans(path.front()) || !t.spans(path.back())) {
    throw Error("f-path leaves the component of the base point");
  }
  Cycle c{t.path(t.root(), path.front())};
  c.vertices.insert(c.vertices.end(), path.begin() + 1, path.end());
  auto back = t.path(path.back(), t.root());
  c.vertices.insert(c.vertices.end(), back.begin() + 1, back.end());
  if (c.vertices.size() == 1) c.vertices.push_back(t.root());
  return c;
}

Cycle XiContext::coordinate_cycle(const Polymorphism& f, std::size_t i) const {
  const Vertex t1 = c_.vertices.front();
  std::vector<std::vector<Vertex>> coords(c_.vertices.size(), std::vector<Vertex>(f.arity(), t1));
  for (std::size_t s = 0; s < c_.vertices.size(); ++s) coords[s][i] = c_.vertices[s];
  return based_cycle(apply_path(f, coords));
}

XiImage XiContext::xi(const Polymorphism& f) const {
  XiImage img;
  img.arity = f.arity();
  for (std::size_t i = 0; i < f.arity(); ++i) {
    img.words.push_back(*b_.reduced_word(coordinate_cycle(f, i)));
  }
  return img;
}

bool check_minor_preservation(const XiImage& of_f, const XiImage& of_minor,
                              const std::vector<std::size_t>& pi) {
  if (pi.size() != of_f.arity) return false;
  for (std::size_t i = 0; i < of_minor.arity; ++i) {
    GroupWord product;
    for (std::size_t j = 0; j < pi.size(); ++j) {
      if (pi[j] == i) product = concat(product, of_f.words[j]);
    }
    if (free_reduce(product) != free_reduce(of_minor.words[i])) return false;
  }
  return true;
}

bool check_minor_preservation(const XiContext& ctx, const Polymorphism& f,
                              const std::vector<std::size_t>& pi, std::size_t m) {
  return check_minor_preservation(ctx.xi(f), ctx.xi(minor(f, pi, m)), pi);
}

NondegeneracyReport check_nondegenerate(const XiContext& ctx,
                                        const std::vector<Homomorphism>& homs) {
  NondegeneracyReport report;
  for (std::size_t k = 0; k < homs.size(); ++k) {
    Polymorphism g(1, homs[k].map.size(), homs[k].map);
    NondegeneracyEntry e{homs[k], ctx.coordinate_cycle(g, 0), {}};
    e.word = *ctx.context_b().reduced_word(e.cycle);
    if (e.word.empty() && report.pass) {
      report.pass = false;
      report.first_failure = k;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<std::size_t> essential_coordinates(const Polymorphism& f) {
  std::vector<std::size_t> out;
  const std::size_t d = f.source_size();
  const std::size_t size = f.table().size();
  for (std::size_t i = 0; i < f.arity(); ++i) {
    bool essential = false;
    for (std::size_t idx = 0; idx < size && !essential; ++idx) {
      Tuple x = f.arguments(idx);
      const Element value = f.table()[idx];
      for (Element a = 0; a < d && !essential; ++a) {
        x[i] = a;
        essential = f(x) != value;
      }
    }
    if (essential) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> essential_coordinates(const XiImage& img) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < img.words.size(); ++i) {
    if (!free_reduce(img.words[i]).empty()) out.push_back(i);
  }
  return out;
}

bool XiStructure::nontrivial() const {
  if (!commuting || root.empty()) return false;
  return std::any_of(exponents.begin(), exponents.end(), [](long c) { return c != 0; });
}

XiStructure analyze_xi_structure(const XiImage& img) {
  XiStructure out;
  auto r = common_root(img.words);
  if (!r) return out;
  out.commuting = true;
  out.root = std::move(r->root);
  out.exponents = std::move(r->exponents);
  return out;
}

std::vector<std::vector<std::size_t>> all_maps(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m == 0) return out;
  std::vector<std::size_t> pi(n, 0);
  while (true) {
    out.push_back(pi);
    std::size_t k = n;
    while (k > 0 && ++pi[k - 1] == m) pi[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

}  // namespace edgepath
