#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace pseudospace {

using VertexId = std::uint32_t;
using Level = int;
using VertexSet = std::set<VertexId>;
using Mask = boost::dynamic_bitset<>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An (n+1)-coloured graph whose edges only join vertices on adjacent levels.
///
/// Vertex ids are dense and assigned in insertion order. Adjacency lists are
/// kept sorted so that every traversal is deterministic.
class LevelGraph {
 public:
  explicit LevelGraph(int dimension);

  int dimension() const { return dimension_; }
  std::size_t size() const { return levels_.size(); }
  bool empty() const { return levels_.empty(); }
  bool contains(VertexId v) const { return v < levels_.size(); }

  VertexId add_vertex(Level level);
  /// Idempotent; throws GraphError when the levels are not adjacent.
  void add_edge(VertexId u, VertexId v);
  bool has_edge(VertexId u, VertexId v) const;

  Level level(VertexId v) const;
  std::span<const VertexId> neighbours(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbours(v).size(); }
  std::vector<VertexId> vertices_at(Level level) const;

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<VertexId, VertexId>> edges() const;
  std::size_t edge_count() const { return edge_count_; }

  Mask empty_mask() const { return Mask(size()); }
  Mask full_mask() const { return ~Mask(size()); }

  friend bool operator==(const LevelGraph&, const LevelGraph&) = default;

 private:
  void check(VertexId v) const;

  int dimension_;
  std::vector<Level> levels_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Induced subgraph on `keep`; returns the subgraph and the map new id -> old id.
/// Levels are shifted down by `level_offset` and the result has `dimension`.
std::pair<LevelGraph, std::vector<VertexId>> induced_subgraph(const LevelGraph& g, const Mask& keep,
                                                              int dimension, Level level_offset = 0);

Mask to_mask(const LevelGraph& g, const VertexSet& s);
VertexSet to_set(const Mask& m);

}  // namespace pseudospace
