#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pseudospace/coxeter.hpp"
#include "pseudospace/level_graph.hpp"
#include "pseudospace/report.hpp"

namespace pseudospace {

/// One vertex per level 0..n, consecutive entries adjacent.
using Chamber = std::vector<VertexId>;

struct Gallery {
  std::vector<Chamber> chambers;
  CoxWord type;
};

/// All chambers in lexicographic order of their vertex tuples.
std::vector<Chamber> chambers(const LevelGraph& g);
/// The lexicographically first chamber, without enumerating the rest.
std::optional<Chamber> first_chamber(const LevelGraph& g);

/// The single level at which the chambers differ; nullopt when they are equal
/// or differ at more than one level.
std::optional<Level> panel_adjacent(const Chamber& a, const Chamber& b);

struct BuildingCheckOptions {
  int word_bound = 4;
  /// Root chambers tested for axiom 2; all of them when there are no more.
  std::size_t max_roots = 24;
  std::uint64_t seed = 0;
};

/// Chamber graph of a model, built once and queried many times.
class ChamberSystem {
 public:
  explicit ChamberSystem(const LevelGraph& g);

  const LevelGraph& graph() const { return *g_; }
  const std::vector<Chamber>& chambers() const { return chambers_; }
  std::size_t size() const { return chambers_.size(); }
  std::optional<std::size_t> find(const Chamber& c) const;
  /// Chambers containing v.
  std::vector<std::size_t> containing(VertexId v) const;

  /// Neighbours of chamber c as (chamber, level) pairs.
  const std::vector<std::pair<std::size_t, Level>>& adjacent(std::size_t c) const { return adj_[c]; }
  /// Chambers i-adjacent to c, including c itself.
  std::vector<std::size_t> panel(std::size_t c, Level i) const;

  /// A shortest gallery; nullopt if the chambers lie in different components.
  std::optional<Gallery> shortest_gallery(std::size_t from, std::size_t to) const;
  std::optional<CoxWord> weyl_distance(std::size_t from, std::size_t to) const;
  /// Weyl distances from one chamber to every chamber.
  std::vector<std::optional<CoxWord>> weyl_distances_from(std::size_t from) const;
  /// Throws std::invalid_argument if x or y lies in no chamber.
  std::optional<CoxWord> vertex_weyl_distance(VertexId x, VertexId y) const;

  /// Chambers reachable from c along galleries of the given type.
  std::vector<std::size_t> reach(std::size_t from, const std::vector<int>& type) const;

  std::optional<Gallery> find_reduced_closed_gallery(int max_len) const;
  ClassReport verify(const BuildingCheckOptions& opts = {}) const;

 private:
  const LevelGraph* g_;
  std::vector<Chamber> chambers_;
  std::vector<std::vector<std::pair<std::size_t, Level>>> adj_;
  std::vector<std::vector<std::size_t>> by_vertex_;
};

std::optional<CoxWord> weyl_distance(const LevelGraph& g, const Chamber& a, const Chamber& b);
std::optional<CoxWord> vertex_weyl_distance(const LevelGraph& g, VertexId x, VertexId y);
std::optional<Gallery> find_reduced_closed_gallery(const LevelGraph& g, int max_len);
ClassReport verify_building(const LevelGraph& g, int word_bound);
ClassReport verify_building(const LevelGraph& g, const BuildingCheckOptions& opts);

/// Every band connected and every vertex in some chamber.
bool is_building_model(const LevelGraph& g);

/// Reduced words of length 1..max_len over t_0..t_n.
std::vector<std::vector<int>> reduced_words(int n, int max_len);

}  // namespace pseudospace
