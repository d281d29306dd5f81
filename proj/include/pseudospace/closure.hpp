#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pseudospace/geometry.hpp"

namespace pseudospace {

/// One checked segment of a reduced-path derivation: path[begin..end] on
/// levels band_low .. band_low + band_width.
struct DerivationStep {
  std::size_t begin = 0;
  std::size_t end = 0;
  Level band_low = 0;
  int band_width = 0;
  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

struct ReducedCert {
  PathCert path;
  std::vector<DerivationStep> derivation;  // innermost segments first
  std::vector<VertexId> turns;
};

/// Certificate when the path is reduced: single-band segments have no
/// repetition, and every maximal segment inside the lower or upper sub-band
/// of a wider band is reduced in turn.
std::optional<ReducedCert> is_reduced(const LevelGraph& g, const std::vector<VertexId>& path);

/// Interior vertices where the path changes direction.
std::vector<VertexId> turns(const LevelGraph& g, const std::vector<VertexId>& path);

struct ProjectionFlag {
  VertexId source = 0;
  VertexSet target;
  std::vector<VertexId> flag;  // sorted by level; empty when source is cut off from acl(target)
};

enum class TypeClass { Algebraic, I, II, III, IV, Unclassified };
const char* to_string(TypeClass t);

/// Closure operations relative to a finite ambient graph, which is assumed to
/// be a strong substructure of the saturated model. The graph must outlive
/// this object. All members are const and safe to call concurrently.
class Closure {
 public:
  explicit Closure(const LevelGraph& g);

  const LevelGraph& graph() const { return *g_; }
  const IncidenceIndex& index() const { return index_; }

  /// Smallest superset closed under band paths between its members.
  Mask band_closure(Mask s) const;
  bool connected(VertexId a, VertexId b) const { return component_[a] == component_[b]; }

  VertexSet acl_pair(VertexId a, VertexId b) const;
  VertexSet acl(const VertexSet& a) const;
  bool nice(const VertexSet& a) const;
  VertexSet nice_hull(const VertexSet& a) const;

  ProjectionFlag project(VertexId a, const VertexSet& target) const;
  /// A independent from B over C: proj(x / B u C) lies in acl(C) for every x in acl(A).
  bool independent(const VertexSet& a, const VertexSet& b, const VertexSet& c) const;
  TypeClass classify_type(VertexId a, const VertexSet& target) const;

 private:
  std::vector<VertexId> band_path(int band, VertexId u, VertexId v) const;
  // Walk states: "at v, arrived from its k-th neighbour" is state_begin_[v] + k;
  // "at v, walk starts here" is start_state(v). Walks never backtrack.
  std::size_t start_state(VertexId v) const { return state_begin_.back() + v; }
  // Walks from state `from` to `to` that turn only inside `allowed`. On failure
  // `blocked` receives the vertices where such a walk would have to turn.
  bool walk_reaches(std::size_t from, VertexId to, const Mask& allowed,
                    std::vector<VertexId>* blocked = nullptr) const;
  template <class Step>
  void moves(std::size_t s, Step&& step) const;
  Mask acl_pair_mask(VertexId a, VertexId b) const;
  // Turns, in order, of a walk from a to b with fewest turns outside `free`.
  std::optional<std::vector<VertexId>> fewest_turns(VertexId a, VertexId b, const Mask& free) const;
  struct PairSearch;
  std::vector<VertexId> entry_points(VertexId a, VertexId b, const Mask& closed) const;
  std::vector<VertexId> project_onto(VertexId a, const Mask& closed) const;

  const LevelGraph* g_;
  IncidenceIndex index_;
  std::vector<int> component_;
  // Per band i (index i-1): component label, BFS-tree parent and depth.
  std::vector<std::vector<int>> band_component_;
  std::vector<std::vector<VertexId>> band_parent_;
  std::vector<std::vector<int>> band_depth_;
  std::vector<Mask> band_mask_;
  std::vector<std::size_t> state_begin_;  // size |V|+1
  std::vector<std::size_t> arrive_;       // directed edge (v, k) -> state at its head
  std::vector<VertexId> state_vertex_;
};

// Calls step(next_state, w, turned) for every non-backtracking move out of s.
template <class Step>
void Closure::moves(std::size_t s, Step&& step) const {
  const auto& g = *g_;
  const VertexId v = state_vertex_[s];
  const std::size_t base = state_begin_[v];
  auto nbrs = g.neighbours(v);
  const bool started = s < state_begin_.back();
  const VertexId prev = started ? nbrs[s - base] : v;
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const VertexId w = nbrs[k];
    if (started && w == prev) continue;
    step(arrive_[base + k], w, started && g.level(prev) == g.level(w));
  }
}

VertexSet acl_pair(const LevelGraph& g, VertexId a, VertexId b);
VertexSet acl(const LevelGraph& g, const VertexSet& a);
bool nice_check(const LevelGraph& g, const VertexSet& a);
VertexSet nice_hull(const LevelGraph& g, const VertexSet& a);
ProjectionFlag project(const LevelGraph& g, VertexId a, const VertexSet& target);
bool independent(const LevelGraph& g, const VertexSet& a, const VertexSet& b, const VertexSet& c);
TypeClass classify_type(const LevelGraph& g, VertexId a, const VertexSet& target);

/// Every nice subset of a small graph, as bit masks over vertex ids.
class NiceSubsets {
 public:
  static constexpr std::size_t kDefaultGuard = 18;
  /// Throws std::length_error when the graph has more than `guard` vertices.
  explicit NiceSubsets(const LevelGraph& g, std::size_t guard = kDefaultGuard);

  const std::vector<std::uint64_t>& members() const { return members_; }
  /// Intersection of all nice subsets containing `a`.
  VertexSet intersection_containing(const VertexSet& a) const;

 private:
  std::size_t size_;
  std::vector<std::uint64_t> members_;
};

/// Intersection of all nice subsets of g containing A.
VertexSet acl_oracle(const LevelGraph& g, const VertexSet& a, std::size_t guard = NiceSubsets::kDefaultGuard);

}  // namespace pseudospace
