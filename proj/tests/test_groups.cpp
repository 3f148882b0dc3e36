#include <doctest.h>

#include <random>

#include "oracles.hpp"

using namespace edgepath;

namespace {

GroupWord w(std::string_view text) { return parse_word(text); }

GroupWord random_word(std::mt19937& rng, std::size_t len, std::uint32_t gens) {
  GroupWord out;
  for (std::size_t i = 0; i < len; ++i) out.push_back({static_cast<std::uint32_t>(rng() % gens), rng() % 2 ? 1 : -1});
  return out;
}

EdgePathContext context_of(const std::string& file, const std::string& pp) {
  return EdgePathContext(build_box_complex(oracle::relation_of(file, pp)));
}

Cycle walk_cycle(const std::vector<Vertex>& vs) { return Cycle{vs}; }

const char* kSmall[][2] = {
    {"k3.struct", "E(x,y)"},   {"c3.struct", "E(x,y)"},    {"k2.struct", "E(x,y)"},
    {"h2.struct", "R(x,y,z)"}, {"b3.struct", "R(a,b,c)"},  {"d3.struct", "R(a,b,c)"},
    {"b4.struct", "R(a,b,c,d)"}, {"a2.struct", "R(x,y,z)"},
};

}  // namespace

TEST_CASE("free reduction examples") {
  CHECK(free_reduce(w("e1 e1^-1 e2")) == w("e2"));
  CHECK(free_reduce(w("e1 e2 e2^-1 e1^-1")).empty());
  CHECK(free_reduce(w("e0 e1 e1^-1 e1^-1")) == w("e0 e1^-1"));
  CHECK(is_reduced(w("e0 e1 e0^-1")));
  CHECK_FALSE(is_reduced(w("e0 e0^-1")));
  CHECK(to_string(GroupWord{}) == "1");
  CHECK(to_string(w("e3^-1 e7 e7")) == "e3^-1 e7 e7");
  CHECK(power(w("e0 e1"), -2) == w("e1^-1 e0^-1 e1^-1 e0^-1"));
  CHECK(commute(w("e0 e1"), w("e0 e1 e0 e1")));
  CHECK_FALSE(commute(w("e0"), w("e1")));
  CHECK(equal_in_free_group(w("e0 e1 e1^-1"), w("e2 e2^-1 e0")));
}

TEST_CASE("free reduction is confluent on all short words") {
  const std::vector<Letter> letters = {{0, 1}, {0, -1}, {1, 1}, {1, -1}, {2, 1}, {2, -1}};
  std::map<GroupWord, std::set<GroupWord>> memo;
  std::size_t checked = 0;
  for (std::size_t len = 0; len <= 6; ++len) {
    std::vector<std::size_t> pick(len, 0);
    while (true) {
      GroupWord word;
      for (auto i : pick) word.push_back(letters[i]);
      auto forms = oracle::normal_forms(word, memo);
      REQUIRE(forms.size() == 1);
      CHECK(free_reduce(word) == *forms.begin());
      ++checked;
      std::size_t i = len;
      while (i > 0 && ++pick[i - 1] == letters.size()) pick[--i] = 0;
      if (i == 0) break;
    }
  }
  CHECK(checked == 55987);
}

TEST_CASE("free reduction identities on random words") {
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    auto a = random_word(rng, rng() % 20, 3);
    auto b = random_word(rng, rng() % 20, 3);
    auto r = free_reduce(a);
    CHECK(is_reduced(r));
    CHECK(free_reduce(r) == r);
    CHECK(free_reduce(concat(a, inverse(a))).empty());
    CHECK(free_reduce(concat(a, b)) == free_reduce(concat(r, free_reduce(b))));
    CHECK(parse_word(to_string(a)) == a);
  }
}

TEST_CASE("presentation of the K3 complex") {
  auto ctx = context_of("k3.struct", "E(x,y)");
  auto p = ctx.presentation();
  CHECK(p.generators.size() == 12);
  CHECK(p.count(RelationKind::tree_edge) == 5);
  CHECK(p.count(RelationKind::loop) == 6);
  CHECK(p.count(RelationKind::triangle) == 0);
  auto text = presentation_text(p, ctx.alphabet());
  CHECK(std::count(text.begin(), text.end(), '\n') == 24);
}

TEST_CASE("presentation of a single triangle") {
  auto h = build_complex(Relation(1, {{0}, {1}, {2}}), {{0, 1, 2}});
  EdgePathContext ctx(h);
  auto p = ctx.presentation();
  CHECK(p.generators.size() == 6);
  CHECK(p.count(RelationKind::tree_edge) == 2);
  CHECK(p.count(RelationKind::loop) == 3);
  CHECK(p.count(RelationKind::triangle) == 6);
  REQUIRE(ctx.is_free_case());
  CHECK(ctx.basis()->rank() == 0);
  CHECK(ctx.classify(walk_cycle({0, 1, 2, 0})) == Homotopy::null);
}

TEST_CASE("rho and gamma") {
  auto ctx = context_of("k3.struct", "E(x,y)");
  const auto& t = ctx.tree();
  const auto& al = ctx.alphabet();
  CHECK(ctx.rho(null_cycle(0)).size() == 1);
  CHECK(al.is_loop(ctx.rho(null_cycle(0))[0].gen));
  CHECK_THROWS_AS(ctx.rho(walk_cycle({0, 2, 0})), Error);

  std::vector<std::vector<Vertex>> walks;
  oracle::closed_walks(ctx.complex(), 0, 6, [&](const std::vector<Vertex>& c) { walks.push_back(c); });
  REQUIRE(walks.size() > 10);
  for (std::size_t i = 0; i < walks.size(); i += 5) {
    Cycle a = walk_cycle(walks[i]);
    Cycle b = walk_cycle(walks[(i * 7 + 3) % walks.size()]);
    CHECK(ctx.rho(concat(a, b)) == concat(ctx.rho(a), ctx.rho(b)));
    CHECK(ctx.classify(concat(a, reverse(a))) == Homotopy::null);
    Cycle back = gamma(ctx.rho(a), t, al);
    validate_cycle(back, ctx.graph());
    CHECK(ctx.classify(concat(a, reverse(back))) == Homotopy::null);
  }
}

TEST_CASE("free basis rank matches the incidence cycle rank") {
  CHECK(context_of("k3.struct", "E(x,y)").basis()->rank() == 1);
  CHECK(context_of("k2.struct", "E(x,y)").basis()->rank() == 0);
  for (auto [file, pp] : std::vector<std::pair<const char*, const char*>>{
           {"k3.struct", "E(x,y)"}, {"c5.struct", "E(x,y)"}, {"e.struct", "R(x,y,z)"},
           {"h2.struct", "R(x,y,z)"}, {"a.struct", "R(x,y,z)"}, {"b4.struct", "R(a,b,c,d)"},
           {"d4.struct", "R(a,b,c,d)"}}) {
    auto h = build_box_complex(oracle::relation_of(file, pp));
    EdgePathContext ctx(h);
    REQUIRE_MESSAGE(ctx.is_free_case(), file);
    if (ctx.tree().spanned_count() != h.vertex_count()) continue;
    CHECK_MESSAGE(static_cast<long>(ctx.basis()->rank()) == oracle::incidence_cycle_rank(h), file);
  }
  auto d5 = context_of("d5.struct", "R(a,b,c,d,e)");
  CHECK_FALSE(d5.is_free_case());
  CHECK(d5.classify(null_cycle(0)) == Homotopy::undecided);
}

TEST_CASE("reduced word is invariant under single moves") {
  for (auto [file, pp] : std::vector<std::pair<const char*, const char*>>{
           {"k3.struct", "E(x,y)"}, {"h2.struct", "R(x,y,z)"}, {"d4.struct", "R(a,b,c,d)"}}) {
    auto ctx = context_of(file, pp);
    std::size_t n = 0;
    for (std::size_t len = 1; len <= 6; ++len) {
      oracle::closed_walks(ctx.complex(), 0, len, [&](const std::vector<Vertex>& c) {
        if (n++ % 3) return;
        auto word = ctx.reduced_word(walk_cycle(c));
        for (const auto& d : oracle::single_moves(c, ctx.complex())) {
          CHECK(ctx.reduced_word(walk_cycle(d)) == word);
        }
      });
    }
    CHECK(n > 0);
  }
}

TEST_CASE("null-homotopy agrees with bounded search and homology") {
  for (const auto& [file, pp] : kSmall) {
    auto ctx = context_of(file, pp);
    REQUIRE(ctx.complex().vertex_count() <= 8);
    if (!ctx.is_free_case()) continue;
    const std::size_t cap = ctx.complex().vertex_count() <= 6 ? 12 : 10;
    oracle::HomotopyOracle o(ctx.complex(), 0, cap);
    std::size_t decided = 0, total = 0;
    for (std::size_t len = 1; len <= 7; ++len) {
      oracle::closed_walks(ctx.complex(), 0, len, [&](const std::vector<Vertex>& c) {
        auto mine = ctx.classify(walk_cycle(c));
        auto ref = o.classify(c);
        ++total;
        if (ref == oracle::Verdict::unknown) return;
        ++decided;
        CHECK_MESSAGE(mine == (ref == oracle::Verdict::null ? Homotopy::null : Homotopy::not_null), file);
      });
    }
    CHECK_MESSAGE(decided * 10 >= total * 9, file);
  }
}

TEST_CASE("primitive and common roots") {
  auto r = primitive_root(w("e0 e1 e0 e1 e0 e1"));
  CHECK(r.root == w("e0 e1"));
  CHECK(r.exponent == 3);
  r = primitive_root(w("e2 e0 e0 e2^-1"));
  CHECK(r.root == w("e2 e0 e2^-1"));
  CHECK(r.exponent == 2);
  CHECK(primitive_root(w("e0 e1^-1")).exponent == 1);
  CHECK_THROWS_AS(primitive_root(w("e0 e0^-1")), Error);

  auto c = common_root({w("e0 e1 e0 e1"), w("e1^-1 e0^-1"), GroupWord{}});
  REQUIRE(c);
  CHECK(c->root == w("e0 e1"));
  CHECK(c->exponents == std::vector<long>{2, -1, 0});
  CHECK_FALSE(common_root({w("e0"), w("e1")}));
  CHECK(common_root({GroupWord{}, GroupWord{}})->exponents == std::vector<long>{0, 0});
}

TEST_CASE("primitive root bookkeeping on random words") {
  std::mt19937 rng(23);
  for (int i = 0; i < 400; ++i) {
    auto base = free_reduce(random_word(rng, 1 + rng() % 6, 2));
    if (base.empty()) continue;
    auto y = random_word(rng, rng() % 4, 3);
    long k = 1 + static_cast<long>(rng() % 4);
    auto word = free_reduce(concat(concat(y, oracle::word_power(base, k)), inverse(y)));
    if (word.empty()) continue;
    auto r = primitive_root(word);
    CHECK(r.exponent >= 1);
    CHECK(free_reduce(oracle::word_power(r.root, r.exponent)) == word);
    CHECK_FALSE(oracle::is_proper_power(r.root));
    CHECK(oracle::is_proper_power(word) == (r.exponent > 1));
    // |w| = k·ℓ + 2|y| with ℓ the cyclic core of the root.
    std::size_t m = 0;
    while (2 * (m + 1) < r.root.size() && r.root[m] == r.root[r.root.size() - 1 - m].inverse()) ++m;
    CHECK(word.size() == static_cast<std::size_t>(r.exponent) * (r.root.size() - 2 * m) + 2 * m);
  }
}
