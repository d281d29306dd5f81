#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "pseudospace/amalgam.hpp"
#include "pseudospace/closure.hpp"
#include "pseudospace/io.hpp"

using namespace pseudospace;
using testing_support::extend_randomly;
using testing_support::make_graph;
using testing_support::random_step;

namespace {

std::vector<VertexId> iota_ids(std::size_t k) {
  std::vector<VertexId> out(k);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace

TEST_SUITE("amalgam") {
  TEST_CASE("class membership examples") {
    CHECK(check_class(chamber_chain(3)).verdict());
    auto square = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(check_class(square).violates(1));
    auto no_meet = make_graph(2, {0, 0, 1, 1, 2, 2, 0, 1, 0, 1},
                              {{0, 2}, {1, 3}, {2, 4}, {3, 4}, {2, 5}, {3, 5}, {6, 7}, {7, 4}, {8, 9}, {9, 5}});
    REQUIRE(meet(no_meet, 4, 5).kind == MeetResult::Kind::NoWitness);
    CHECK(check_class(no_meet).violates(2));
    CHECK(check_class(dualize(no_meet)).violates(3));
  }

  TEST_CASE("one-point extension classification") {
    auto small = chamber_chain(2);
    auto big = small;
    VertexId v = big.add_vertex(1);
    auto leaf = is_one_point_extension(small, big, v);
    REQUIRE(leaf);
    CHECK(leaf->kind == ExtensionKind::AttachLeaf);

    big.add_edge(v, 0);
    big.add_edge(v, 2);
    auto split = is_one_point_extension(small, big, v);
    REQUIRE(split);
    CHECK(split->kind == ExtensionKind::SplitFlag);
    CHECK(split->level == 1);

    // Two neighbours with no parallel vertex between them.
    auto bare = make_graph(2, {0, 2}, {});
    auto bare_big = bare;
    VertexId w = bare_big.add_vertex(1);
    bare_big.add_edge(w, 0);
    bare_big.add_edge(w, 1);
    CHECK_FALSE(is_one_point_extension(bare, bare_big, w));
  }

  TEST_CASE("strong subsets") {
    auto chain = chamber_chain(3);
    CHECK(is_strong(chain, {0, 1, 2, 3}));
    CHECK(is_strong(chain, {}));
    // A path a - x - b: x cannot be peeled off over {a, b}.
    auto path = make_graph(1, {0, 1, 0}, {{0, 1}, {1, 2}});
    CHECK_FALSE(is_strong(path, {0, 2}));
    CHECK(is_strong(path, {0}));
  }

  TEST_CASE("strong subsets are exactly the nice ones on small members") {
    std::mt19937_64 rng(17);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
      int n = 1 + trial % 3;
      auto g = generate(n, 6 + trial % 8, trial, BuildVariant::Saturated).graph;
      for (int k = 0; k < 12; ++k) {
        VertexSet a;
        for (VertexId v = 0; v < g.size(); ++v)
          if (rng() % 3 == 0) a.insert(v);
        CHECK_MESSAGE(is_strong(g, a) == nice_check(g, a), "trial " << trial);
        ++compared;
      }
    }
    CHECK(compared == 720);
  }

  TEST_CASE("free amalgam examples") {
    auto a = chamber_chain(2);
    auto c = a;
    VertexId leaf_c = c.add_vertex(0);
    c.add_edge(leaf_c, 1);
    auto same = free_amalgam(a, a, c, iota_ids(3), iota_ids(3));
    CHECK(same.graph == c);

    auto b = a;
    VertexId leaf_b = b.add_vertex(2);
    b.add_edge(leaf_b, 1);
    auto d = free_amalgam(a, b, c, iota_ids(3), iota_ids(3));
    CHECK(d.graph.size() == 5);
    VertexId lb = d.from_b[leaf_b], lc = d.from_c[leaf_c];
    CHECK(d.graph.has_edge(lb, 1));
    CHECK(d.graph.has_edge(lc, 1));
    CHECK_FALSE(d.graph.has_edge(lb, lc));

    // A mapping that is not an induced embedding.
    CHECK_THROWS_AS(free_amalgam(a, b, c, {0, 2, 1}, iota_ids(3)), GraphError);
  }

  TEST_CASE("amalgamation lemma on random triples") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 120; ++trial) {
      int n = 1 + trial % 3;
      auto a = generate(n, n + 1 + static_cast<int>(rng() % 4), trial, BuildVariant::Saturated).graph;
      auto b = extend_randomly(a, 1 + static_cast<int>(rng() % 6), rng);
      auto c = extend_randomly(a, 1 + static_cast<int>(rng() % 6), rng);
      auto d = free_amalgam(a, b, c, iota_ids(a.size()), iota_ids(a.size()));
      CHECK(check_class(d.graph).verdict());
      VertexSet from_b(d.from_b.begin(), d.from_b.end()), from_c(d.from_c.begin(), d.from_c.end());
      CHECK(is_strong(d.graph, from_b));
      CHECK(is_strong(d.graph, from_c));
    }
  }

  TEST_CASE("extension steps") {
    LevelGraph g(2);
    VertexId v = apply_extension(g, {ExtensionKind::AttachLeaf, 0, {}}, BuildVariant::Saturated);
    CHECK(g.level(v) == 0);
    CHECK(g.degree(v) == 0);

    auto chain = chamber_chain(2);
    VertexId y = apply_extension(chain, {ExtensionKind::SplitFlag, 1, {0, 2}}, BuildVariant::Saturated);
    CHECK(chain.has_edge(y, 0));
    CHECK(chain.has_edge(y, 2));
    CHECK_THROWS_AS(apply_extension(chain, {ExtensionKind::SplitFlag, 1, {0, 3}}, BuildVariant::Saturated),
                    GraphError);

    auto prime = chamber_chain(2);
    CHECK_THROWS_AS(apply_extension(prime, {ExtensionKind::AttachLeaf, 1, {}}, BuildVariant::Prime), GraphError);
    CHECK_THROWS_AS(apply_extension(prime, {ExtensionKind::SeedChamber, 1, {0}}, BuildVariant::Saturated),
                    GraphError);
  }

  TEST_CASE("class membership is closed under strong extensions") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 80; ++trial) {
      int n = 1 + trial % 4;
      auto g = generate(n, n + 4, trial, BuildVariant::Saturated).graph;
      for (int step = 0; step < 8; ++step) {
        apply_extension(g, random_step(g, rng), BuildVariant::Saturated);
        REQUIRE(check_class(g).verdict());
      }
    }
  }

  TEST_CASE("generation") {
    auto g = generate(1, 40, 3, BuildVariant::Saturated).graph;
    CHECK(enumerate_simple_cycles(g, 40).empty());
    CHECK_THROWS_AS(generate(3, 3, 0, BuildVariant::Saturated), GraphError);

    for (int n = 1; n <= 4; ++n)
      for (auto variant : {BuildVariant::Saturated, BuildVariant::Prime})
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
          auto a = generate(n, 30, seed, variant);
          auto b = generate(n, 30, seed, variant);
          CHECK(dump(to_json(a.graph)) == dump(to_json(b.graph)));
          CHECK(dump(to_json(a.recipe)) == dump(to_json(b.recipe)));
          CHECK(replay(a.recipe) == a.graph);
          auto cv = variant == BuildVariant::Prime ? ClassVariant::KnPrime : ClassVariant::Kn;
          CHECK(check_class(a.graph, cv).verdict());
          CHECK(is_strong(a.graph, {}));
        }
  }

  TEST_CASE("axiom checks") {
    CHECK(check_sigma(LevelGraph(2)).verdict());
    for (int n = 1; n <= 3; ++n) {
      auto r = check_sigma(generate(n, 40, 1, BuildVariant::Saturated).graph, 10);
      CHECK(r.verdict());
      CHECK(r.stats.size() > 0);
    }
    auto no_meet = make_graph(2, {0, 0, 1, 1, 2, 2, 0, 1, 0, 1},
                              {{0, 2}, {1, 3}, {2, 4}, {3, 4}, {2, 5}, {3, 5}, {6, 7}, {7, 4}, {8, 9}, {9, 5}});
    CHECK(check_sigma(no_meet).violates(3));
  }

  TEST_CASE("duality preserves class membership") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
      int n = 1 + trial % 4;
      auto g = trial % 2 ? generate(n, 12, trial, BuildVariant::Saturated).graph
                         : testing_support::random_graph(n, 9, 0.3, rng);
      CHECK(check_class(g).verdict() == check_class(dualize(g)).verdict());
    }
  }
}
