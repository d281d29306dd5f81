#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "pseudospace/amalgam.hpp"
#include "pseudospace/level_graph.hpp"

namespace testing_support {

using namespace pseudospace;

inline LevelGraph make_graph(int n, const std::vector<Level>& levels,
                             const std::vector<std::pair<VertexId, VertexId>>& edges) {
  LevelGraph g(n);
  for (Level l : levels) g.add_vertex(l);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

/// Random level graph: each pair on adjacent levels is joined with probability p.
inline LevelGraph random_graph(int n, int size, double p, std::mt19937_64& rng) {
  LevelGraph g(n);
  std::uniform_int_distribution<int> level(0, n);
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < size; ++i) g.add_vertex(level(rng));
  for (VertexId u = 0; u < g.size(); ++u)
    for (VertexId v = u + 1; v < g.size(); ++v)
      if (std::abs(g.level(u) - g.level(v)) == 1 && coin(rng)) g.add_edge(u, v);
  return g;
}

/// A random 1-point strong extension of g for the saturated variant.
inline ExtensionStep random_step(const LevelGraph& g, std::mt19937_64& rng) {
  const int n = g.dimension();
  std::vector<ExtensionStep> splits;
  for (VertexId y = 0; y < g.size(); ++y) {
    Level l = g.level(y);
    if (l == 0 || l == n) continue;
    for (VertexId x : g.neighbours(y))
      for (VertexId z : g.neighbours(y))
        if (g.level(x) == l - 1 && g.level(z) == l + 1) splits.push_back({ExtensionKind::SplitFlag, l, {x, z}});
  }
  if (!splits.empty() && rng() % 3 == 0) return splits[rng() % splits.size()];
  if (!g.empty() && rng() % 4 != 0) {
    VertexId a = static_cast<VertexId>(rng() % g.size());
    Level l = g.level(a);
    Level to = (l == 0 || (l < n && rng() % 2)) ? l + 1 : l - 1;
    return {ExtensionKind::AttachLeaf, to, {a}};
  }
  return {ExtensionKind::AttachLeaf, static_cast<Level>(rng() % (n + 1)), {}};
}

/// g followed by `steps` random strong extensions.
inline LevelGraph extend_randomly(LevelGraph g, int steps, std::mt19937_64& rng) {
  for (int i = 0; i < steps; ++i) apply_extension(g, random_step(g, rng), BuildVariant::Saturated);
  return g;
}

}  // namespace testing_support
