#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace edgepath;

namespace {

/// Every table A^n -> B, filtered by coordinatewise preservation of each relation.
std::vector<std::vector<Element>> brute_polymorphisms(const RelationalStructure& a, const RelationalStructure& b,
                                                      std::size_t n) {
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= a.domain_size();
  std::vector<std::vector<Element>> out;
  std::vector<Element> table(cells, 0);
  const Element d = static_cast<Element>(b.domain_size());
  while (true) {
    Polymorphism f(n, a.domain_size(), table);
    bool good = true;
    for (std::size_t k = 0; k < a.relations().size() && good; ++k) {
      const auto& ra = a.relation(k).relation;
      auto target = oracle::tuple_set(b.relation(k).relation);
      if (ra.empty()) continue;
      std::vector<std::size_t> pick(n, 0);
      while (good) {
        Tuple img(ra.arity());
        for (std::size_t c = 0; c < ra.arity(); ++c) {
          Tuple args(n);
          for (std::size_t j = 0; j < n; ++j) args[j] = ra[pick[j]][c];
          img[c] = f(args);
        }
        good = target.count(img) > 0;
        std::size_t j = n;
        while (j > 0 && ++pick[j - 1] == ra.size()) pick[--j] = 0;
        if (j == 0) break;
      }
    }
    if (good) out.push_back(table);
    std::size_t i = cells;
    while (i > 0 && ++table[i - 1] == d) table[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<std::vector<Element>> tables(const std::vector<Polymorphism>& fs) {
  std::vector<std::vector<Element>> out;
  for (const auto& f : fs) out.push_back(f.table());
  return out;
}

struct Setup {
  RelationalStructure a, b;
  EdgePathContext ctx_b;
  XiContext xi;
  std::vector<Polymorphism> unary, binary;
};

Setup setup(const std::string& fa, const std::string& fb) {
  auto a = oracle::corpus(fa);
  auto b = oracle::corpus(fb);
  auto ra = oracle::relation_of(fa, "E(x,y)");
  auto rb = oracle::relation_of(fb, "E(x,y)");
  auto ha = build_box_complex(ra);
  ComplexGraph ga(ha);
  SpanningTree ta(ga, 0);
  auto mc = build_mu_cycle(ga, ta, reduce_to_prime_order(cyclic_shift_mu(ra)), 0);
  EdgePathContext cb(build_box_complex(rb));
  XiContext xi(ha, cb, mc.cycle);
  return {a, b, cb, xi, enumerate_polymorphisms(a, b, 1), enumerate_polymorphisms(a, b, 2)};
}

}  // namespace

TEST_CASE("polymorphism counts") {
  auto k3 = oracle::corpus("k3.struct");
  auto c5 = oracle::corpus("c5.struct");
  CHECK(enumerate_polymorphisms(c5, k3, 1).size() == 30);
  CHECK(enumerate_polymorphisms(c5, k3, 2).size() == 7560);
  CHECK(tables(enumerate_polymorphisms(k3, k3, 2)) == brute_polymorphisms(k3, k3, 2));
  CHECK(tables(enumerate_polymorphisms(c5, k3, 1)) == oracle::homs(c5, k3));
  PolymorphismOptions capped;
  capped.max_count = 100;
  CHECK_THROWS_AS(enumerate_polymorphisms(c5, k3, 2, capped), CapExceeded);
  PolymorphismOptions threaded;
  threaded.threads = 4;
  CHECK(enumerate_polymorphisms(c5, k3, 2, threaded) == enumerate_polymorphisms(c5, k3, 2));
}

TEST_CASE("polymorphisms equal brute force on small random structures") {
  std::mt19937 rng(41);
  for (int i = 0; i < 40; ++i) {
    auto mk = [&](std::size_t d, double p) {
      std::vector<std::string> dom;
      for (std::size_t k = 0; k < d; ++k) dom.push_back("v" + std::to_string(k));
      std::vector<Tuple> ts;
      std::bernoulli_distribution keep(p);
      for (Element x = 0; x < d; ++x)
        for (Element y = 0; y < d; ++y)
          if (keep(rng)) ts.push_back({x, y});
      return RelationalStructure("S", dom, {{"E", Relation(2, ts)}});
    };
    auto a = mk(2, 0.5);
    auto b = mk(3, 0.5);
    for (std::size_t n = 1; n <= 2; ++n) CHECK(tables(enumerate_polymorphisms(a, b, n)) == brute_polymorphisms(a, b, n));
  }
}

TEST_CASE("minors") {
  Polymorphism f(2, 3, {0, 1, 2, 1, 2, 0, 2, 0, 1});
  auto diag = minor(f, {0, 0}, 1);
  CHECK(diag.arity() == 1);
  CHECK(diag.table() == std::vector<Element>{0, 2, 1});
  auto swapped = minor(f, {1, 0}, 2);
  for (Element x = 0; x < 3; ++x)
    for (Element y = 0; y < 3; ++y) CHECK(swapped(Tuple{x, y}) == f(Tuple{y, x}));
  auto wide = minor(f, {2, 0}, 3);
  CHECK(wide.arity() == 3);
  for (std::size_t idx = 0; idx < wide.table().size(); ++idx) {
    Tuple x = wide.arguments(idx);
    CHECK(wide.table()[idx] == f(Tuple{x[2], x[0]}));
  }
  CHECK_THROWS_AS(minor(f, {0, 3}, 2), Error);

  auto k3 = oracle::corpus("k3.struct");
  auto c5 = oracle::corpus("c5.struct");
  auto binary = enumerate_polymorphisms(c5, k3, 2);
  for (std::size_t i = 0; i < binary.size(); i += 97) {
    for (const auto& pi : all_maps(2, 3)) CHECK(is_polymorphism(c5, k3, minor(binary[i], pi, 3)));
  }
}

TEST_CASE("all_maps") {
  CHECK(all_maps(2, 3).size() == 9);
  CHECK(all_maps(3, 2).front() == std::vector<std::size_t>{0, 0, 0});
  CHECK(all_maps(3, 2).back() == std::vector<std::size_t>{1, 1, 1});
  CHECK(all_maps(2, 0).empty());
  auto m = all_maps(2, 4);
  CHECK(std::is_sorted(m.begin(), m.end()));
}

TEST_CASE("xi of the identity on K3 is a free generator") {
  auto s = setup("k3.struct", "k3.struct");
  REQUIRE(s.ctx_b.basis()->rank() == 1);
  auto id = as_polymorphism(Homomorphism{{0, 1, 2}}, 3);
  auto img = s.xi.xi(id);
  REQUIRE(img.words.size() == 1);
  CHECK(img.words[0].size() == 1);
  CHECK(s.ctx_b.basis()->is_generator(img.words[0][0].gen));
  // Automorphisms send the hexagon to itself, possibly reversed.
  for (const auto& f : s.unary) CHECK(s.xi.xi(f).words[0].size() == 1);
}

TEST_CASE("xi preserves minors") {
  auto s = setup("c5.struct", "k3.struct");
  std::size_t checked = 0;
  for (std::size_t i = 0; i < s.binary.size(); i += 53) {
    for (std::size_t m = 1; m <= 3; ++m) {
      for (const auto& pi : all_maps(2, m)) {
        CHECK(check_minor_preservation(s.xi, s.binary[i], pi, m));
        ++checked;
      }
    }
  }
  CHECK(checked > 100);

  auto img = s.xi.xi(s.binary[0]);
  auto diag = s.xi.xi(minor(s.binary[0], {0, 0}, 1));
  CHECK(check_minor_preservation(img, diag, {0, 0}));
  XiImage corrupted = diag;
  corrupted.words[0].push_back({s.ctx_b.basis()->generators.front(), 1});
  CHECK_FALSE(check_minor_preservation(img, corrupted, {0, 0}));
  CHECK_FALSE(check_minor_preservation(img, diag, {0}));
}

TEST_CASE("xi images commute with a non-trivial common root") {
  auto s = setup("c5.struct", "k3.struct");
  for (std::size_t i = 0; i < s.binary.size(); i += 7) {
    auto img = s.xi.xi(s.binary[i]);
    for (const auto& u : img.words)
      for (const auto& v : img.words) CHECK(commute(u, v));
    auto st = analyze_xi_structure(img);
    CHECK(st.nontrivial());
    GroupWord product;
    for (const auto& w : img.words) product = concat(product, w);
    long total = std::accumulate(st.exponents.begin(), st.exponents.end(), 0L);
    CHECK(free_reduce(product) == free_reduce(power(st.root, total)));
  }
  XiImage split{2, {parse_word("e0"), parse_word("e1")}};
  CHECK_FALSE(analyze_xi_structure(split).commuting);
  XiImage trivial{2, {{}, {}}};
  CHECK_FALSE(analyze_xi_structure(trivial).nontrivial());
}

TEST_CASE("essential coordinates") {
  Polymorphism first(2, 2, {0, 0, 1, 1});
  CHECK(essential_coordinates(first) == std::vector<std::size_t>{0});
  Polymorphism constant(3, 2, std::vector<Element>(8, 1));
  CHECK(essential_coordinates(constant).empty());
  Polymorphism xor2(2, 2, {0, 1, 1, 0});
  CHECK(essential_coordinates(xor2) == std::vector<std::size_t>{0, 1});

  auto s = setup("k3.struct", "k3.struct");
  REQUIRE(s.binary.size() == 12);
  for (const auto& f : s.binary) {
    CHECK(essential_coordinates(f).size() == 1);
    CHECK(essential_coordinates(s.xi.xi(f)) == essential_coordinates(f));
  }
}

TEST_CASE("non-degeneracy") {
  auto s = setup("c5.struct", "k3.struct");
  std::vector<Homomorphism> homs;
  for (const auto& f : s.unary) homs.push_back(Homomorphism{f.table()});
  auto rep = check_nondegenerate(s.xi, homs);
  CHECK(rep.pass);
  CHECK(rep.entries.size() == 30);
  for (const auto& e : rep.entries) {
    CHECK_FALSE(e.word.empty());
    CHECK(s.ctx_b.classify(e.cycle) == Homotopy::not_null);
  }

  // Around a null walk every image is null.
  auto ha = s.xi.complex_a();
  XiContext flat(ha, s.ctx_b, null_cycle(0));
  auto bad = check_nondegenerate(flat, homs);
  CHECK_FALSE(bad.pass);
  CHECK(bad.first_failure == std::size_t{0});
}
