#include <doctest.h>

#include <algorithm>
#include <functional>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "pseudospace/amalgam.hpp"
#include "pseudospace/building.hpp"

using namespace pseudospace;
using testing_support::make_graph;

namespace {

// Every choice of one vertex per level with consecutive choices adjacent.
std::vector<Chamber> brute_chambers(const LevelGraph& g) {
  std::vector<std::vector<VertexId>> by_level(static_cast<std::size_t>(g.dimension() + 1));
  for (VertexId v = 0; v < g.size(); ++v) by_level[static_cast<std::size_t>(g.level(v))].push_back(v);
  std::vector<Chamber> out;
  Chamber cur;
  std::function<void(std::size_t)> rec = [&](std::size_t l) {
    if (l == by_level.size()) {
      out.push_back(cur);
      return;
    }
    for (VertexId v : by_level[l]) {
      cur.push_back(v);
      bool ok = true;
      for (std::size_t i = 0; i + 1 < cur.size() && ok; ++i) ok = g.has_edge(cur[i], cur[i + 1]);
      if (ok) rec(l + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Types of all galleries from a to b with at most max_len steps whose type is
// a reduced word.
std::vector<CoxWord> reduced_gallery_types(const ChamberSystem& cs, std::size_t a, std::size_t b, int max_len) {
  const int n = cs.graph().dimension();
  std::vector<CoxWord> out;
  std::vector<int> type;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == b) out.push_back(CoxWord{n, type});
    if (static_cast<int>(type.size()) == max_len) return;
    for (auto [d, level] : cs.adjacent(c)) {
      type.push_back(level);
      if (is_reduced_word(CoxWord{n, type})) rec(d);
      type.pop_back();
    }
  };
  rec(a);
  return out;
}

// Level-preserving permutations that map edges to edges.
std::vector<std::vector<VertexId>> automorphisms(const LevelGraph& g) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> image(g.size());
  std::vector<char> used(g.size(), 0);
  std::function<void(VertexId)> rec = [&](VertexId v) {
    if (v == g.size()) {
      out.push_back(image);
      return;
    }
    for (VertexId w = 0; w < g.size(); ++w) {
      if (used[w] || g.level(w) != g.level(v) || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (VertexId u = 0; u < v && ok; ++u) ok = g.has_edge(u, v) == g.has_edge(image[u], w);
      if (!ok) continue;
      used[w] = 1;
      image[v] = w;
      rec(v + 1);
      used[w] = 0;
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_SUITE("building") {
  TEST_CASE("chambers match exhaustive enumeration") {
    std::mt19937_64 rng(2);
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
      int n = 1 + trial % 3;
      auto g = trial % 2 ? testing_support::random_graph(n, 10, 0.4, rng)
                         : generate(n, 6 + trial % 6, trial, BuildVariant::Saturated).graph;
      if (g.size() > 12) continue;
      CHECK(chambers(g) == brute_chambers(g));
      auto first = first_chamber(g);
      auto all = brute_chambers(g);
      CHECK(first.has_value() == !all.empty());
      if (first) CHECK(*first == all.front());
      ++compared;
    }
    CHECK(compared > 40);
    CHECK(chambers(LevelGraph(2)).empty());
  }

  TEST_CASE("panel adjacency") {
    CHECK(panel_adjacent({0, 1, 2}, {0, 3, 2}) == Level{1});
    CHECK_FALSE(panel_adjacent({0, 1, 2}, {0, 1, 2}));
    CHECK_FALSE(panel_adjacent({0, 1, 2}, {4, 3, 2}));

    auto split = chamber_chain(2);
    apply_extension(split, {ExtensionKind::SplitFlag, 1, {0, 2}}, BuildVariant::Prime);
    ChamberSystem cs(split);
    REQUIRE(cs.size() == 2);
    CHECK(cs.panel(0, 1) == std::vector<std::size_t>{0, 1});
    CHECK(cs.panel(0, 0) == std::vector<std::size_t>{0});
    CHECK(cs.weyl_distance(0, 1)->gens == std::vector<int>{1});
  }

  TEST_CASE("Weyl distance is well defined") {
    std::mt19937_64 rng(4);
    for (int n = 1; n <= 3; ++n)
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto g = generate(n, 14, seed, BuildVariant::Prime).graph;
        ChamberSystem cs(g);
        REQUIRE(cs.size() > 0);
        for (int k = 0; k < 12; ++k) {
          std::size_t a = rng() % cs.size(), b = rng() % cs.size();
          auto delta = cs.weyl_distance(a, b);
          REQUIRE(delta);
          CHECK(normal_form(*delta) == *delta);
          CHECK(cs.weyl_distance(b, a) == normal_form(reversed(*delta)));
          if (a == b) CHECK(delta->empty());
          for (const auto& w : reduced_gallery_types(cs, a, b, 6)) CHECK(normal_form(w) == *delta);
        }
      }
  }

  TEST_CASE("distances from one chamber agree with pairwise distances") {
    auto g = generate(2, 20, 1, BuildVariant::Prime).graph;
    ChamberSystem cs(g);
    auto row = cs.weyl_distances_from(0);
    for (std::size_t c = 0; c < cs.size(); ++c) CHECK(row[c] == cs.weyl_distance(0, c));
    CHECK(weyl_distance(g, cs.chambers()[0], cs.chambers().back()) == row.back());
    CHECK_THROWS_AS(weyl_distance(g, {0, 0, 0}, cs.chambers()[0]), std::invalid_argument);
  }

  TEST_CASE("vertex distance does not depend on the chambers chosen") {
    int checked = 0;
    for (int n = 1; n <= 3; ++n)
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto g = generate(n, n + 4, seed, BuildVariant::Prime).graph;
        ChamberSystem cs(g);
        if (cs.size() > 10) continue;
        for (VertexId x = 0; x < g.size(); ++x)
          for (VertexId y = 0; y < g.size(); ++y) {
            auto expect = cs.vertex_weyl_distance(x, y);
            REQUIRE(expect);
            for (auto c : cs.containing(x))
              for (auto d : cs.containing(y))
                CHECK(min_double_coset_rep(*cs.weyl_distance(c, d), g.level(x), g.level(y)) == *expect);
            ++checked;
          }
      }
    CHECK(checked > 100);
    LevelGraph lonely(1);
    lonely.add_vertex(0);
    CHECK_THROWS_AS(vertex_weyl_distance(lonely, 0, 0), std::invalid_argument);
  }

  TEST_CASE("vertex distance is invariant under automorphisms") {
    int nontrivial = 0;
    for (int n = 1; n <= 3; ++n)
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = generate(n, n + 5, seed, BuildVariant::Prime).graph;
        if (g.size() > 10) continue;
        ChamberSystem cs(g);
        auto autos = automorphisms(g);
        nontrivial += autos.size() > 1;
        for (const auto& sigma : autos)
          for (VertexId x = 0; x < g.size(); ++x)
            for (VertexId y = 0; y < g.size(); ++y)
              CHECK(cs.vertex_weyl_distance(sigma[x], sigma[y]) == cs.vertex_weyl_distance(x, y));
      }
    CHECK(nontrivial > 0);
  }

  TEST_CASE("closed galleries") {
    // A 4-cycle for n = 1 is a closed gallery of reduced type 0101.
    auto square = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    auto closed = find_reduced_closed_gallery(square, 8);
    REQUIRE(closed);
    CHECK(closed->type.size() == 4);
    CHECK(is_reduced_word(closed->type));
    CHECK(closed->chambers.front() == closed->chambers.back());
    CHECK_FALSE(find_reduced_closed_gallery(square, 3));
    CHECK_THROWS_AS(find_reduced_closed_gallery(square, 0), std::invalid_argument);

    for (int n = 1; n <= 3; ++n)
      for (std::uint64_t seed = 0; seed < 5; ++seed)
        CHECK_FALSE(find_reduced_closed_gallery(generate(n, 18, seed, BuildVariant::Prime).graph, 8));
  }

  TEST_CASE("building axioms") {
    auto single = verify_building(chamber_chain(2), 4);
    CHECK(single.verdict());
    CHECK_FALSE(single.warnings.empty());

    for (int n = 1; n <= 3; ++n)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = generate(n, 24, seed, BuildVariant::Prime).graph;
        CHECK(verify_building(g, {3, 12, seed}).verdict());
        CHECK(is_building_model(g));
      }

    // Two separate chambers: distances undefined between them.
    auto two = make_graph(1, {0, 1, 0, 1}, {{0, 1}, {2, 3}});
    CHECK_FALSE(verify_building(two, 3).verdict());
    CHECK_FALSE(is_building_model(two));
  }

  TEST_CASE("reduced word listing") {
    auto words = reduced_words(2, 3);
    for (const auto& w : words) CHECK(is_reduced_word(CoxWord{2, w}));
    CHECK(std::count_if(words.begin(), words.end(), [](const auto& w) { return w.size() == 1; }) == 3);
    std::set<std::vector<int>> brute;
    for (int len = 1; len <= 3; ++len)
      for (int code = 0; code < 27; ++code) {
        std::vector<int> w;
        for (int k = 0, c = code; k < len; ++k, c /= 3) w.push_back(c % 3);
        if (code < std::pow(3, len) && is_reduced_word(CoxWord{2, w})) brute.insert(w);
      }
    CHECK(std::set<std::vector<int>>(words.begin(), words.end()) == brute);
    CHECK(brute.size() == words.size());
  }
}
