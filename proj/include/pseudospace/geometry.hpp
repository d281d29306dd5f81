#pragma once

#include <optional>
#include <vector>

#include "pseudospace/level_graph.hpp"

namespace pseudospace {

/// Precomputed incidence for a graph that is no longer being mutated.
///
/// x (level i) is incident with y (level j > i) when an E-chain
/// x = x_i, x_{i+1}, ..., x_j = y exists with one vertex per level.
/// The index keeps, for every vertex, its upward and downward closure.
class IncidenceIndex {
 public:
  explicit IncidenceIndex(const LevelGraph& g);

  const LevelGraph& graph() const { return *graph_; }
  bool incident(VertexId x, VertexId y) const;
  /// Vertices incident with v on levels >= level(v), v included.
  const Mask& up(VertexId v) const { return up_[v]; }
  /// Vertices incident with v on levels <= level(v), v included.
  const Mask& down(VertexId v) const { return down_[v]; }
  /// R(v): every vertex other than v that is incident with v.
  Mask residue(VertexId v) const;
  /// Level-0 vertices incident with v.
  Mask bottom(VertexId v) const;
  /// Level-n vertices incident with v.
  Mask top(VertexId v) const;

 private:
  const LevelGraph* graph_;
  std::vector<Mask> up_;
  std::vector<Mask> down_;
  Mask level0_;
  Mask level_top_;
};

bool incident(const LevelGraph& g, VertexId x, VertexId y);
VertexSet residue(const LevelGraph& g, VertexId x);

/// Outcome of a meet (or join) query. `Empty` is a legitimate answer;
/// `NoWitness` certifies that the common incidences are not realised by any
/// vertex, which is a class violation rather than an error.
struct MeetResult {
  enum class Kind { Vertex, Empty, NoWitness };
  Kind kind = Kind::Empty;
  VertexSet witnesses;
  VertexSet common;  // the shared level-0 (meet) or level-n (join) vertices
};

MeetResult meet(const IncidenceIndex& index, VertexId x, VertexId y);
MeetResult join(const IncidenceIndex& index, VertexId x, VertexId y);
MeetResult meet(const LevelGraph& g, VertexId x, VertexId y);
MeetResult join(const LevelGraph& g, VertexId x, VertexId y);

enum class FlagKind { NotFlag, Flag, DenseFlag };

struct Flag {
  std::vector<VertexId> members;  // strictly increasing levels
  bool dense = false;
  friend bool operator==(const Flag&, const Flag&) = default;
};

FlagKind is_flag(const IncidenceIndex& index, std::span<const VertexId> vs);
FlagKind is_flag(const LevelGraph& g, std::span<const VertexId> vs);
/// Sorts members by level and validates; nullopt when `vs` is not a flag.
std::optional<Flag> make_flag(const IncidenceIndex& index, std::span<const VertexId> vs);

struct PathCert {
  std::vector<VertexId> vertices;
  Level band_low = 0;
  int band_width = 0;  // the path lies in levels band_low .. band_low + band_width
  bool simple_cycle = false;
  friend bool operator==(const PathCert&, const PathCert&) = default;
};

/// Validates adjacency and fills in band and cycle information.
PathCert make_path(const LevelGraph& g, std::vector<VertexId> vertices);

/// Interior positions where the path changes direction: both path neighbours
/// lie one level below, or both one level above.
std::vector<std::size_t> turn_positions(const LevelGraph& g, std::span<const VertexId> path);

/// All simple cycles with at most `max_len` edges. Each cycle is reported once,
/// closed (first vertex repeated at the end), rotated to start at its least id
/// and oriented so that the second vertex is smaller than the penultimate.
std::vector<PathCert> enumerate_simple_cycles(const LevelGraph& g, int max_len);

/// Level i becomes level n - i; edges are unchanged.
LevelGraph dualize(const LevelGraph& g);

/// The k-th vertex of the unique shortest E_i-path from x to y when that path
/// exists and has length >= k; otherwise x.
VertexId path_fn(const LevelGraph& g, int band, int k, VertexId x, VertexId y);

/// Vertices whose level lies in [lo, hi].
Mask level_band(const LevelGraph& g, Level lo, Level hi);
/// Connected-component label per vertex of the subgraph induced on `within`;
/// vertices outside get -1.
std::vector<int> components(const LevelGraph& g, const Mask& within);
/// A shortest path from `from` to `to` inside `within`, empty if none.
std::vector<VertexId> shortest_path(const LevelGraph& g, const Mask& within, VertexId from, VertexId to);
bool is_connected(const LevelGraph& g, const Mask& within);

/// A single chamber x_0 - x_1 - ... - x_n with ids 0..n.
LevelGraph chamber_chain(int dimension);

}  // namespace pseudospace
