#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace edgepath;

namespace {

Relation k3_edges() { return oracle::relation_of("k3.struct", "E(x,y)"); }

std::set<VertexSet> as_set(const std::vector<VertexSet>& fs) { return {fs.begin(), fs.end()}; }

Relation random_relation(std::mt19937& rng, std::size_t d, std::size_t arity, std::size_t max_size) {
  std::vector<Tuple> ts;
  std::uniform_int_distribution<Element> val(0, static_cast<Element>(d - 1));
  const std::size_t n = 1 + rng() % max_size;
  for (std::size_t i = 0; i < n; ++i) {
    Tuple t(arity);
    for (auto& x : t) x = val(rng);
    ts.push_back(t);
  }
  return Relation(arity, ts);
}

const char* kApplications[][2] = {
    {"k3.struct", "E(x,y)"},         {"c5.struct", "E(x,y)"},         {"c7.struct", "E(x,y)"},
    {"petersen.struct", "E(x,y)"},   {"h2.struct", "R(x,y,z)"},       {"e.struct", "R(x,y,z)"},
    {"a.struct", "R(x,y,z)"},        {"a3.struct", "R(x,y,z)"},       {"b3.struct", "R(a,b,c)"},
    {"b4.struct", "R(a,b,c,d)"},     {"d4.struct", "R(a,b,c,d)"},     {"b5.struct", "R(a,b,c,d,e)"},
    {"d5.struct", "R(a,b,c,d,e)"},   {"b6.struct", "R(a,b,c,d,e,f)"}, {"d6.struct", "R(a,b,c,d,e,f)"},
};

}  // namespace

TEST_CASE("box tolerance of K3 edges") {
  auto q = box_tolerance(k3_edges());
  CHECK(q.is_reflexive());
  CHECK(q.is_symmetric());
  CHECK(q.pairs.rows() == 6);
  for (Vertex u = 0; u < 6; ++u) {
    int others = 0;
    for (Vertex v = 0; v < 6; ++v) others += u != v && q.related(u, v);
    CHECK(others == 2);
  }
  // (a,b) ~ (a,c) and (a,b) ~ (c,b).
  CHECK(q.related(0, 1));
  CHECK(q.related(0, 5));
  CHECK_FALSE(q.related(0, 2));
}

TEST_CASE("box tolerance edge cases") {
  auto single = box_tolerance(Relation(2, {{0, 1}}));
  CHECK(single.pairs.size() == 1);
  CHECK(single.related(0, 0));
  auto full = box_tolerance(Relation(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK(full.pairs.sum() == 16);
  CHECK(maximal_faces_from_tolerance(full).size() == 1);
  CHECK_THROWS_AS(box_tolerance(k3_edges(), 10), CapExceeded);
}

TEST_CASE("maximal faces of K3 edges are the six boxes") {
  auto r = k3_edges();
  auto faces = maximal_faces_from_tolerance(box_tolerance(r));
  CHECK(faces.size() == 6);
  for (const auto& f : faces) CHECK(f.size() == 2);
  CHECK(as_set(faces) == oracle::maximal_boxes(r));
}

TEST_CASE("six maximal faces of R^E") {
  auto e = oracle::corpus("e.struct");
  auto r = e.relation(0).relation;
  auto h = build_box_complex(r);
  REQUIRE(h.face_count() == 6);
  std::set<std::set<Tuple>> expected;
  const std::vector<Tuple> base = {{0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  std::vector<std::size_t> perm = {0, 1, 2};
  do {
    std::set<Tuple> face;
    for (const auto& t : base) face.insert({t[perm[0]], t[perm[1]], t[perm[2]]});
    expected.insert(face);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::set<Tuple>> got;
  for (const auto& f : h.maximal_faces()) {
    std::set<Tuple> face;
    for (Vertex v : f) face.insert(r[v]);
    got.insert(face);
  }
  CHECK(got == expected);
  CHECK(max_pairwise_face_overlap(h).max_overlap <= 1);
}

TEST_CASE("single tuple relation has one face") {
  auto h = build_box_complex(Relation(3, {{1, 0, 1}}));
  REQUIRE(h.face_count() == 1);
  CHECK(h.face(0).size() == 1);
  CHECK(max_pairwise_face_overlap(h).max_overlap == 0);
}

TEST_CASE("D4 box faces: four faces of size four, pairwise overlap one") {
  auto r = oracle::relation_of("d4.struct", "R(a,b,c,d)");
  CHECK(r.size() == 12);
  auto h = build_box_complex(r);
  CHECK(h.face_count() == 4);
  for (const auto& f : h.maximal_faces()) CHECK(f.size() == 4);
  CHECK(max_pairwise_face_overlap(h).max_overlap == 1);
}

TEST_CASE("D5 box faces share two tuples") {
  auto r = oracle::relation_of("d5.struct", "R(a,b,c,d,e)");
  auto h = build_box_complex(r);
  auto o = max_pairwise_face_overlap(h);
  CHECK(o.max_overlap == 2);
  REQUIRE(o.faces);
  // The faces with 1-cores {5} and {4,5} share (0,0,0,1,1) and (1,0,0,1,1).
  std::set<Tuple> common;
  for (Vertex v : o.common) common.insert(r[v]);
  CHECK(common == std::set<Tuple>{{0, 0, 0, 1, 1}, {1, 0, 0, 1, 1}});
}

TEST_CASE("custom faces keep maximal members and add singletons") {
  auto r = k3_edges();
  auto h = build_complex(r, {{0, 1}, {0}, {2, 3}});
  CHECK(h.face_count() == 4);
  CHECK(h.faces_of(4).size() == 1);
  CHECK_THROWS_AS(build_complex(r, {{0, 9}}), Error);
  auto discrete = build_complex(r, {});
  ComplexGraph g(discrete);
  CHECK(g.edge_count() == 0);
  CHECK_FALSE(is_connected(g));
}

TEST_CASE("graph of the K3 complex is a 6-cycle") {
  auto r = k3_edges();
  auto h = build_box_complex(r);
  ComplexGraph g(h);
  CHECK(g.edge_count() == 6);
  CHECK(is_connected(g));
  // (a,b)-(a,c)-(b,c)-(b,a)-(c,a)-(c,b)-(a,b)
  const std::vector<Tuple> order = {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    Vertex u = *h.vertex_of(order[i]);
    Vertex v = *h.vertex_of(order[(i + 1) % order.size()]);
    CHECK(g.adjacent(u, v));
    CHECK(h.is_face(std::vector<Vertex>{u, v}));
  }
  SpanningTree t(g, 0);
  CHECK(t.edges().size() == 5);
  CHECK(t.spanned_count() == 6);
  for (Vertex v = 0; v < 6; ++v) {
    auto p = t.path(0, v);
    CHECK(p.front() == 0);
    CHECK(p.back() == v);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(t.is_tree_edge(p[i], p[i + 1]));
  }
}

TEST_CASE("shortest paths and components") {
  auto h = build_complex(Relation(1, {{0}, {1}, {2}, {3}}), {{0, 1}, {1, 2}});
  ComplexGraph g(h);
  auto comp = connected_components(g);
  CHECK(comp[0] == comp[2]);
  CHECK(comp[0] != comp[3]);
  CHECK(shortest_path(g, 0, 2) == std::vector<Vertex>{0, 1, 2});
  CHECK(shortest_path(g, 0, 3).empty());
  SpanningTree t(g, 0);
  CHECK_FALSE(t.spans(3));
}

TEST_CASE("polymorphism stability") {
  auto k3 = oracle::corpus("k3.struct");
  auto c5 = oracle::corpus("c5.struct");
  auto hk = build_box_complex(k3_edges());
  for (const auto& f : enumerate_polymorphisms(k3, k3, 1)) CHECK(check_polymorphism_stable(hk, hk, f).stable);
  auto hc = build_box_complex(oracle::relation_of("c5.struct", "E(x,y)"));
  auto binary = enumerate_polymorphisms(c5, k3, 2);
  CHECK(binary.size() == 7560);
  for (std::size_t i = 0; i < binary.size(); i += 7) CHECK(check_polymorphism_stable(hc, hk, binary[i]).stable);

  // A face {(a,b),(a,c)} of the source mapped by a non-homomorphic table.
  auto discrete = build_complex(k3_edges(), {});
  Polymorphism swap(1, 3, {0, 1, 0});
  auto rep = check_polymorphism_stable(hk, discrete, Polymorphism(1, 3, {0, 1, 2}));
  CHECK_FALSE(rep.stable);
  CHECK_FALSE(rep.faces.empty());
  CHECK_FALSE(check_polymorphism_stable(hk, hk, swap).stable);
}

TEST_CASE("box faces verify as products of their projections") {
  for (const auto& [file, pp] : kApplications) {
    auto r = oracle::relation_of(file, pp);
    if (r.size() > 64 || r.arity() > 4) continue;
    auto h = build_box_complex(r);
    for (const auto& f : h.maximal_faces()) CHECK(is_box(r, f));
  }
}

TEST_CASE("maximal faces equal brute-force maximal boxes") {
  for (const auto& [file, pp] : kApplications) {
    auto r = oracle::relation_of(file, pp);
    CHECK_MESSAGE(as_set(build_box_complex(r).maximal_faces()) == oracle::maximal_boxes(r), file);
  }
}

TEST_CASE("box tolerance equals composed one-coordinate moves") {
  std::mt19937 rng(5);
  int boxed = 0;
  for (int i = 0; i < 300; ++i) {
    auto r = random_relation(rng, 2 + rng() % 2, 1 + rng() % 3, 20);
    auto q = box_tolerance(r);
    CHECK(q.is_reflexive());
    CHECK(q.is_symmetric());
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (Vertex u = 0; u < r.size(); ++u)
      for (Vertex v = 0; v < r.size(); ++v)
        if (q.related(u, v)) got.insert({u, v});
    CHECK(got == oracle::box_tolerance_pairs(r));

    auto cliques = maximal_faces_from_tolerance(q, false);
    bool all_boxes = std::all_of(cliques.begin(), cliques.end(), [&](const VertexSet& c) { return is_box(r, c); });
    if (all_boxes) {
      ++boxed;
      CHECK(as_set(cliques) == oracle::maximal_boxes(r));
    } else {
      CHECK_THROWS_AS(maximal_faces_from_tolerance(q), Error);
    }
  }
  CHECK(boxed > 100);
}

TEST_CASE("a maximal tolerance class that is not a box is rejected") {
  Relation r(3, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
  auto q = box_tolerance(r);
  auto cliques = maximal_faces_from_tolerance(q, false);
  VertexSet odd;
  for (const Tuple& t : std::vector<Tuple>{{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 0}}) odd.push_back(*r.index_of(t));
  std::sort(odd.begin(), odd.end());
  CHECK(std::find(cliques.begin(), cliques.end(), odd) != cliques.end());
  CHECK_FALSE(is_box(r, odd));
  CHECK_THROWS_AS(build_box_complex(r), Error);
}

TEST_CASE("periodic-free relations: no box is fixed by a proper shift power") {
  for (const auto& [file, pp] : kApplications) {
    auto r = oracle::relation_of(file, pp);
    if (find_periodic_tuple(r)) continue;
    auto h = build_box_complex(r);
    auto mu = cyclic_shift_mu(r);
    for (std::size_t i = 1; i < mu.order; ++i) {
      auto p = mu.power(i);
      for (const auto& f : h.maximal_faces()) {
        VertexSet img;
        for (Vertex v : f) img.push_back(p[v]);
        std::sort(img.begin(), img.end());
        CHECK(img != f);
      }
    }
  }
}
