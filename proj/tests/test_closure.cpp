#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pseudospace/amalgam.hpp"
#include "pseudospace/closure.hpp"

using namespace pseudospace;
using testing_support::make_graph;

namespace {

bool subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet random_subset(const LevelGraph& g, std::size_t max_size, std::mt19937_64& rng) {
  VertexSet out;
  std::size_t k = 1 + rng() % max_size;
  while (out.size() < std::min<std::size_t>(k, g.size())) out.insert(static_cast<VertexId>(rng() % g.size()));
  return out;
}

// Generated members of the class, small and large.
std::vector<LevelGraph> corpus(int budget, int seeds) {
  std::vector<LevelGraph> out;
  for (int n = 1; n <= 4; ++n)
    for (auto variant : {BuildVariant::Saturated, BuildVariant::Prime})
      for (int seed = 0; seed < seeds; ++seed) out.push_back(generate(n, budget, seed, variant).graph);
  return out;
}

}  // namespace

TEST_SUITE("closure") {
  TEST_CASE("reduced paths") {
    auto chain = chamber_chain(3);
    auto dense = is_reduced(chain, {0, 1, 2, 3});
    REQUIRE(dense);
    CHECK(dense->turns.empty());
    CHECK_FALSE(is_reduced(chain, {0, 1, 0}));

    // x0 - y1 - z2 with a second bottom vertex w0 on y; the walk x,y,z,y,w
    // doubles back through z.
    auto fork = make_graph(2, {0, 1, 2, 0}, {{0, 1}, {1, 2}, {3, 1}});
    CHECK_FALSE(is_reduced(fork, {0, 1, 2, 1, 3}));
    auto bent = is_reduced(fork, {0, 1, 3});
    REQUIRE(bent);
    CHECK(bent->turns == std::vector<VertexId>{1});
  }

  TEST_CASE("turns") {
    CHECK(turns(chamber_chain(4), {0, 1, 2, 3, 4}).empty());
    auto vee = make_graph(1, {0, 1, 0}, {{0, 1}, {1, 2}});
    CHECK(turns(vee, {0, 1, 2}) == std::vector<VertexId>{1});
    auto zigzag = make_graph(1, {0, 1, 0, 1, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(turns(zigzag, {0, 1, 2, 3, 4}) == std::vector<VertexId>{1, 2, 3});
  }

  TEST_CASE("pair closure examples") {
    auto chain = chamber_chain(3);
    CHECK(acl_pair(chain, 0, 3) == VertexSet{0, 3});
    CHECK(acl_pair(chain, 1, 2) == VertexSet{1, 2});

    auto apart = make_graph(2, {0, 2}, {});
    CHECK(acl_pair(apart, 0, 1) == VertexSet{0, 1});

    // a0 - x1 - y0 - b1 is the only path and turns at x and y.
    auto path = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(acl_pair(path, 0, 3) == VertexSet{0, 1, 2, 3});

    CHECK_THROWS_AS(acl_pair(path, 0, 9), std::out_of_range);
  }

  TEST_CASE("set closure examples") {
    auto path = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(acl(path, {}).empty());
    CHECK(acl(path, {2}) == VertexSet{2});
    CHECK(acl(path, {0, 3}) == VertexSet{0, 1, 2, 3});
  }

  TEST_CASE("trivial pairs are exactly flags and disconnected pairs") {
    int sampled = 0;
    std::mt19937_64 rng(3);
    for (const auto& g : corpus(24, 3)) {
      Closure c(g);
      for (int k = 0; k < 40; ++k) {
        auto a = static_cast<VertexId>(rng() % g.size()), b = static_cast<VertexId>(rng() % g.size());
        if (a == b) continue;
        std::vector<VertexId> pair{a, b};
        bool trivial = is_flag(c.index(), pair) != FlagKind::NotFlag || !c.connected(a, b);
        CHECK_MESSAGE(trivial == (c.acl_pair(a, b).size() == 2), "pair " << a << "," << b);
        ++sampled;
      }
    }
    CHECK(sampled > 800);
  }

  TEST_CASE("closure operator laws") {
    std::mt19937_64 rng(5);
    for (const auto& g : corpus(30, 3)) {
      Closure c(g);
      for (int k = 0; k < 12; ++k) {
        auto a = random_subset(g, 4, rng);
        auto cl = c.acl(a);
        CHECK(subset(a, cl));
        CHECK_MESSAGE(c.acl(cl) == cl, "dimension " << g.dimension());
        auto bigger = a;
        bigger.insert(static_cast<VertexId>(rng() % g.size()));
        CHECK(subset(cl, c.acl(bigger)));
        // Pairwise union, by definition.
        VertexSet pairs = a;
        for (VertexId x : a)
          for (VertexId y : a)
            if (x < y) pairs.merge(c.acl_pair(x, y));
        CHECK(pairs == cl);
      }
    }
  }

  TEST_CASE("closure lies inside the nice-subset oracle") {
    int compared = 0, equal = 0;
    for (const auto& g : corpus(14, 4)) {
      if (g.size() > 16) continue;
      Closure c(g);
      NiceSubsets nice(g, 16);
      for (VertexId a = 0; a < g.size(); ++a)
        for (VertexId b = a + 1; b < g.size(); b += 2) {
          auto ours = c.acl({a, b});
          auto oracle = nice.intersection_containing({a, b});
          CHECK(subset(ours, oracle));
          equal += ours == oracle;
          ++compared;
        }
    }
    CHECK(compared > 0);
    MESSAGE("oracle agreement " << equal << "/" << compared);
  }

  TEST_CASE("nice sets") {
    auto chain = chamber_chain(2);
    CHECK(nice_check(chain, {0, 1, 2}));
    // Clause 2: connected in g, not inside A.
    CHECK_FALSE(nice_check(chain, {0, 2}));
    // Clause 1: a band path leaves A.
    auto zigzag = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}});
    CHECK_FALSE(nice_check(zigzag, {0, 1, 3}));
    CHECK(nice_hull(zigzag, {0, 3}) == VertexSet{0, 1, 2, 3});
    CHECK(nice_hull(chain, {0, 1, 2}) == VertexSet{0, 1, 2});
    CHECK(nice_hull(chain, {0, 2}) == VertexSet{0, 1, 2});

    std::mt19937_64 rng(9);
    for (const auto& g : corpus(16, 2))
      for (int k = 0; k < 10; ++k) {
        auto a = random_subset(g, 4, rng);
        auto hull = nice_hull(g, a);
        CHECK(subset(a, hull));
        CHECK(nice_check(g, hull));
      }
  }

  TEST_CASE("oracle agrees with nice_check") {
    auto g = generate(2, 11, 1, BuildVariant::Saturated).graph;
    NiceSubsets nice(g);
    for (auto m : nice.members()) {
      VertexSet s;
      for (VertexId v = 0; v < g.size(); ++v)
        if (m >> v & 1) s.insert(v);
      REQUIRE(nice_check(g, s));
    }
    auto chain = chamber_chain(3);
    CHECK(acl_oracle(chain, {0, 1, 2, 3}) == VertexSet{0, 1, 2, 3});
    CHECK_THROWS_AS(acl_oracle(generate(2, 19, 0, BuildVariant::Saturated).graph, {0}), std::length_error);
  }

  TEST_CASE("projection examples") {
    auto chain = chamber_chain(2);
    CHECK(project(chain, 1, {1}).flag == std::vector<VertexId>{1});

    auto apart = make_graph(2, {0, 1, 2}, {{0, 1}});
    CHECK(project(apart, 2, {0, 1}).flag.empty());

    // Leaf a hanging off b only.
    auto leaf = make_graph(1, {0, 1, 0}, {{0, 1}, {2, 1}});
    CHECK(project(leaf, 2, {1}).flag == std::vector<VertexId>{1});
  }

  TEST_CASE("projections are flags inside the closure") {
    std::mt19937_64 rng(11);
    for (const auto& g : corpus(26, 3)) {
      Closure c(g);
      for (int k = 0; k < 20; ++k) {
        auto target = random_subset(g, 3, rng);
        auto a = static_cast<VertexId>(rng() % g.size());
        auto p = c.project(a, target);
        auto cl = c.acl(target);
        for (VertexId v : p.flag) CHECK(cl.count(v) == 1);
        if (!p.flag.empty()) CHECK(is_flag(c.index(), p.flag) != FlagKind::NotFlag);
        if (cl.count(a)) CHECK(p.flag == std::vector<VertexId>{a});
      }
    }
  }

  TEST_CASE("independence examples") {
    auto leaf = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {2, 1}});
    CHECK(independent(leaf, {2}, {1}, {1}));
    CHECK(independent(leaf, {3}, {1}, {}));
    CHECK_FALSE(independent(leaf, {2}, {1}, {}));
  }

  TEST_CASE("independence properties") {
    std::mt19937_64 rng(13);
    int checked = 0;
    for (const auto& g : corpus(22, 3)) {
      Closure c(g);
      for (int k = 0; k < 12; ++k) {
        auto a = random_subset(g, 2, rng);
        auto b = random_subset(g, 3, rng);
        auto cset = random_subset(g, 2, rng);
        // Over the empty set: independent iff cut off from acl(B).
        bool cut_off = true;
        for (VertexId x : c.acl(a))
          for (VertexId y : c.acl(b)) cut_off = cut_off && !c.connected(x, y);
        CHECK(c.independent(a, b, {}) == cut_off);
        // Enlarging C toward B keeps independence.
        if (c.independent(a, b, cset)) {
          auto grown = cset;
          grown.insert(*b.begin());
          CHECK(c.independent(a, b, grown));
        }
        CHECK(c.independent(a, b, b));
        ++checked;
      }
    }
    CHECK(checked > 0);
  }

  TEST_CASE("type classification") {
    // Isolated vertex.
    auto apart = make_graph(2, {0, 1, 2, 1}, {{0, 1}, {1, 2}});
    CHECK(classify_type(apart, 3, {0, 1, 2}) == TypeClass::I);

    CHECK(classify_type(chamber_chain(2), 1, {0, 1}) == TypeClass::Algebraic);

    auto split = chamber_chain(2);
    apply_extension(split, {ExtensionKind::SplitFlag, 1, {0, 2}}, BuildVariant::Saturated);
    CHECK(classify_type(split, 3, {0, 1, 2}) == TypeClass::IV);

    auto leaf = chamber_chain(2);
    apply_extension(leaf, {ExtensionKind::AttachLeaf, 1, {2}}, BuildVariant::Saturated);
    CHECK(classify_type(leaf, 3, {0, 1, 2}) == TypeClass::II);
  }
}
