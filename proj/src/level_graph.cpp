#include "pseudospace/level_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace pseudospace {

LevelGraph::LevelGraph(int dimension) : dimension_(dimension) {
  if (dimension < 1) throw GraphError("dimension must be >= 1");
}

void LevelGraph::check(VertexId v) const {
  if (!contains(v)) throw std::out_of_range("unknown vertex id " + std::to_string(v));
}

VertexId LevelGraph::add_vertex(Level level) {
  if (level < 0 || level > dimension_) {
    throw GraphError("level " + std::to_string(level) + " outside 0.." + std::to_string(dimension_));
  }
  levels_.push_back(level);
  adjacency_.emplace_back();
  return static_cast<VertexId>(levels_.size() - 1);
}

void LevelGraph::add_edge(VertexId u, VertexId v) {
  check(u);
  check(v);
  if (std::abs(levels_[u] - levels_[v]) != 1) {
    throw GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                     "} does not join adjacent levels");
  }
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
}

bool LevelGraph::has_edge(VertexId u, VertexId v) const {
  check(u);
  check(v);
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

Level LevelGraph::level(VertexId v) const {
  check(v);
  return levels_[v];
}

std::span<const VertexId> LevelGraph::neighbours(VertexId v) const {
  check(v);
  return adjacency_[v];
}

std::vector<VertexId> LevelGraph::vertices_at(Level level) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < size(); ++v)
    if (levels_[v] == level) out.push_back(v);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> LevelGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count_);
  for (VertexId u = 0; u < size(); ++u)
    for (VertexId v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::pair<LevelGraph, std::vector<VertexId>> induced_subgraph(const LevelGraph& g, const Mask& keep,
                                                              int dimension, Level level_offset) {
  LevelGraph sub(dimension);
  std::vector<VertexId> back;
  std::vector<VertexId> fwd(g.size(), static_cast<VertexId>(-1));
  for (VertexId v = 0; v < g.size(); ++v) {
    if (!keep.test(v)) continue;
    fwd[v] = sub.add_vertex(g.level(v) - level_offset);
    back.push_back(v);
  }
  for (auto [u, v] : g.edges())
    if (keep.test(u) && keep.test(v)) sub.add_edge(fwd[u], fwd[v]);
  return {std::move(sub), std::move(back)};
}

Mask to_mask(const LevelGraph& g, const VertexSet& s) {
  Mask m(g.size());
  for (VertexId v : s) {
    if (!g.contains(v)) throw std::out_of_range("unknown vertex id " + std::to_string(v));
    m.set(v);
  }
  return m;
}

VertexSet to_set(const Mask& m) {
  VertexSet s;
  for (auto i = m.find_first(); i != Mask::npos; i = m.find_next(i)) s.insert(static_cast<VertexId>(i));
  return s;
}

}  // namespace pseudospace
