#include "pseudospace/building.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "pseudospace/amalgam.hpp"
#include "pseudospace/geometry.hpp"

namespace pseudospace {

namespace {

std::string describe(const Chamber& c) {
  return "(" + format_word(std::vector<int>(c.begin(), c.end())) + ")";
}

std::vector<VertexId> neighbours_at(const LevelGraph& g, VertexId v, Level l) {
  std::vector<VertexId> out;
  for (VertexId w : g.neighbours(v))
    if (g.level(w) == l) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

// Visits chambers in lexicographic order until `visit` returns false.
template <class Visit>
void for_each_chamber(const LevelGraph& g, Visit&& visit) {
  const int n = g.dimension();
  Chamber cur;
  std::function<bool(VertexId)> extend = [&](VertexId v) {
    cur.push_back(v);
    bool go_on = true;
    if (static_cast<int>(cur.size()) == n + 1)
      go_on = visit(cur);
    else
      for (VertexId w : neighbours_at(g, v, g.level(v) + 1))
        if (!(go_on = extend(w))) break;
    cur.pop_back();
    return go_on;
  };
  for (VertexId v = 0; v < g.size(); ++v)
    if (g.level(v) == 0 && !extend(v)) return;
}

}  // namespace

std::vector<Chamber> chambers(const LevelGraph& g) {
  std::vector<Chamber> out;
  for_each_chamber(g, [&](const Chamber& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::optional<Chamber> first_chamber(const LevelGraph& g) {
  std::optional<Chamber> out;
  for_each_chamber(g, [&](const Chamber& c) {
    out = c;
    return false;
  });
  return out;
}

std::optional<Level> panel_adjacent(const Chamber& a, const Chamber& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<Level> diff;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (diff) return std::nullopt;
    diff = static_cast<Level>(i);
  }
  return diff;
}

ChamberSystem::ChamberSystem(const LevelGraph& g) : g_(&g), chambers_(pseudospace::chambers(g)) {
  const int n = g.dimension();
  adj_.resize(chambers_.size());
  by_vertex_.resize(g.size());
  for (std::size_t c = 0; c < chambers_.size(); ++c)
    for (VertexId v : chambers_[c]) by_vertex_[v].push_back(c);

  for (Level i = 0; i <= n; ++i) {
    std::map<Chamber, std::vector<std::size_t>> panels;
    for (std::size_t c = 0; c < chambers_.size(); ++c) {
      Chamber key = chambers_[c];
      key[static_cast<std::size_t>(i)] = static_cast<VertexId>(-1);
      panels[key].push_back(c);
    }
    for (const auto& [key, members] : panels)
      for (std::size_t a : members)
        for (std::size_t b : members)
          if (a != b) adj_[a].push_back({b, i});
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

std::optional<std::size_t> ChamberSystem::find(const Chamber& c) const {
  auto it = std::lower_bound(chambers_.begin(), chambers_.end(), c);
  if (it == chambers_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - chambers_.begin());
}

std::vector<std::size_t> ChamberSystem::containing(VertexId v) const {
  g_->level(v);
  return by_vertex_[v];
}

std::vector<std::size_t> ChamberSystem::panel(std::size_t c, Level i) const {
  std::vector<std::size_t> out{c};
  for (auto [d, l] : adj_[c])
    if (l == i) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Gallery> ChamberSystem::shortest_gallery(std::size_t from, std::size_t to) const {
  std::vector<std::pair<std::size_t, Level>> parent(chambers_.size(), {SIZE_MAX, -1});
  std::deque<std::size_t> queue{from};
  parent[from] = {from, -1};
  while (!queue.empty() && parent[to].first == SIZE_MAX) {
    std::size_t c = queue.front();
    queue.pop_front();
    for (auto [d, l] : adj_[c])
      if (parent[d].first == SIZE_MAX) {
        parent[d] = {c, l};
        queue.push_back(d);
      }
  }
  if (parent[to].first == SIZE_MAX) return std::nullopt;
  Gallery out{{}, CoxWord{g_->dimension(), {}}};
  for (std::size_t c = to; c != from; c = parent[c].first) {
    out.chambers.push_back(chambers_[c]);
    out.type.gens.push_back(parent[c].second);
  }
  out.chambers.push_back(chambers_[from]);
  std::reverse(out.chambers.begin(), out.chambers.end());
  std::reverse(out.type.gens.begin(), out.type.gens.end());
  return out;
}

std::optional<CoxWord> ChamberSystem::weyl_distance(std::size_t from, std::size_t to) const {
  auto gal = shortest_gallery(from, to);
  if (!gal) return std::nullopt;
  return normal_form(gal->type);
}

std::vector<std::optional<CoxWord>> ChamberSystem::weyl_distances_from(std::size_t from) const {
  std::vector<std::optional<CoxWord>> out(chambers_.size());
  out[from] = CoxWord{g_->dimension(), {}};
  std::deque<std::size_t> queue{from};
  // BFS keeps the raw gallery type; normalise once at the end.
  while (!queue.empty()) {
    std::size_t c = queue.front();
    queue.pop_front();
    for (auto [d, l] : adj_[c])
      if (!out[d]) {
        out[d] = *out[c];
        out[d]->gens.push_back(l);
        queue.push_back(d);
      }
  }
  for (auto& w : out)
    if (w) w = normal_form(*w);
  return out;
}

std::optional<CoxWord> ChamberSystem::vertex_weyl_distance(VertexId x, VertexId y) const {
  const auto& cx = containing(x);
  const auto& cy = containing(y);
  if (cx.empty() || cy.empty())
    throw std::invalid_argument("vertex " + std::to_string(cx.empty() ? x : y) + " lies in no chamber");
  auto d = weyl_distance(cx.front(), cy.front());
  if (!d) return std::nullopt;
  return min_double_coset_rep(*d, g_->level(x), g_->level(y));
}

std::vector<std::size_t> ChamberSystem::reach(std::size_t from, const std::vector<int>& type) const {
  std::vector<std::size_t> frontier{from};
  for (int letter : type) {
    std::vector<std::size_t> next;
    for (std::size_t c : frontier)
      for (auto [d, l] : adj_[c])
        if (l == letter) next.push_back(d);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  return frontier;
}

std::optional<Gallery> ChamberSystem::find_reduced_closed_gallery(int max_len) const {
  if (max_len < 1) throw std::invalid_argument("maximum gallery length must be at least 1");
  const int n = g_->dimension();
  std::vector<int> dist(chambers_.size());
  std::vector<std::size_t> path;
  CoxWord word{n, {}};

  for (std::size_t root = 0; root < chambers_.size(); ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t c = queue.front();
      queue.pop_front();
      if (dist[c] >= max_len) continue;
      for (auto [d, l] : adj_[c])
        if (dist[d] < 0) dist[d] = dist[c] + 1, queue.push_back(d);
    }

    path.assign(1, root);
    word.gens.clear();
    std::function<bool()> dfs = [&]() {
      const std::size_t c = path.back();
      const int used = static_cast<int>(word.size());
      for (auto [d, l] : adj_[c]) {
        if (dist[d] < 0 || used + 1 + dist[d] > max_len) continue;
        word.gens.push_back(l);
        if (is_reduced_word(word)) {
          path.push_back(d);
          if (d == root || dfs()) return true;
          path.pop_back();
        }
        word.gens.pop_back();
      }
      return false;
    };
    if (dfs()) {
      Gallery out{{}, word};
      for (std::size_t c : path) out.chambers.push_back(chambers_[c]);
      return out;
    }
  }
  return std::nullopt;
}

ClassReport ChamberSystem::verify(const BuildingCheckOptions& opts) const {
  const int n = g_->dimension();
  ClassReport report;
  constexpr std::size_t kMaxRecorded = 20;
  std::size_t failures = 0;
  auto fail = [&](int condition, const Chamber& x, const Chamber& y, std::string detail) {
    ++failures;
    if (report.violations.size() >= kMaxRecorded) return;
    std::vector<VertexId> witness(x.begin(), x.end());
    witness.insert(witness.end(), y.begin(), y.end());
    report.violations.push_back({condition, std::move(witness), std::move(detail)});
  };

  if (chambers_.empty()) report.warnings.push_back("no chambers");
  for (Level i = 0; i <= n; ++i) {
    std::size_t singles = 0;
    for (std::size_t c = 0; c < chambers_.size(); ++c)
      if (panel(c, i).size() == 1) ++singles;
    if (singles > 0)
      report.warnings.push_back("level " + std::to_string(i) + ": " + std::to_string(singles) +
                                " chambers alone in their panel");
  }

  std::vector<std::size_t> roots(chambers_.size());
  std::iota(roots.begin(), roots.end(), 0);
  if (roots.size() > opts.max_roots) {
    std::mt19937_64 rng(opts.seed);
    std::shuffle(roots.begin(), roots.end(), rng);
    roots.resize(opts.max_roots);
    std::sort(roots.begin(), roots.end());
  }
  const auto words = reduced_words(n, opts.word_bound);

  for (std::size_t x : roots) {
    const auto delta = weyl_distances_from(x);
    std::map<std::vector<int>, std::vector<std::size_t>> by_distance;
    for (std::size_t y = 0; y < chambers_.size(); ++y) {
      if (!delta[y]) {
        fail(2, chambers_[x], chambers_[y], "no gallery joins " + describe(chambers_[x]) + " and " +
                                                describe(chambers_[y]));
        continue;
      }
      by_distance[delta[y]->gens].push_back(y);
      // Axiom 1: the chambers at distance t_i are exactly the panel mates.
      if (delta[y]->size() == 1 && panel_adjacent(chambers_[x], chambers_[y]) != delta[y]->gens.front())
        fail(1, chambers_[x], chambers_[y], "distance " + format_word(delta[y]->gens) + " without sharing a panel");
    }
    for (const auto& w : words) {
      auto got = reach(x, w);
      auto nf = normal_form(CoxWord{n, w});
      auto it = by_distance.find(nf.gens);
      const std::vector<std::size_t> none;
      const auto& want = it == by_distance.end() ? none : it->second;
      if (got == want) continue;
      std::vector<std::size_t> extra, missing;
      std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra));
      std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
      if (!extra.empty())
        fail(2, chambers_[x], chambers_[extra.front()],
             "gallery of type " + format_word(w) + " but distance " + format_word(delta[extra.front()]->gens));
      if (!missing.empty())
        fail(2, chambers_[x], chambers_[missing.front()],
             "distance " + format_word(nf.gens) + " but no gallery of type " + format_word(w));
    }
  }
  report.stats["chambers"] = static_cast<double>(chambers_.size());
  report.stats["roots"] = static_cast<double>(roots.size());
  report.stats["words"] = static_cast<double>(words.size());
  report.stats["failures"] = static_cast<double>(failures);
  return report;
}

std::vector<std::vector<int>> reduced_words(int n, int max_len) {
  std::vector<std::vector<int>> out;
  CoxWord w{n, {}};
  std::function<void()> grow = [&]() {
    if (static_cast<int>(w.size()) == max_len) return;
    for (int i = 0; i <= n; ++i) {
      w.gens.push_back(i);
      if (is_reduced_word(w)) {
        out.push_back(w.gens);
        grow();
      }
      w.gens.pop_back();
    }
  };
  grow();
  return out;
}

namespace {

std::size_t require_chamber(const ChamberSystem& cs, const Chamber& c) {
  auto i = cs.find(c);
  if (!i) throw std::invalid_argument(describe(c) + " is not a chamber");
  return *i;
}

}  // namespace

std::optional<CoxWord> weyl_distance(const LevelGraph& g, const Chamber& a, const Chamber& b) {
  ChamberSystem cs(g);
  return cs.weyl_distance(require_chamber(cs, a), require_chamber(cs, b));
}

std::optional<CoxWord> vertex_weyl_distance(const LevelGraph& g, VertexId x, VertexId y) {
  return ChamberSystem(g).vertex_weyl_distance(x, y);
}

std::optional<Gallery> find_reduced_closed_gallery(const LevelGraph& g, int max_len) {
  return ChamberSystem(g).find_reduced_closed_gallery(max_len);
}

ClassReport verify_building(const LevelGraph& g, int word_bound) {
  BuildingCheckOptions opts;
  opts.word_bound = word_bound;
  return verify_building(g, opts);
}

ClassReport verify_building(const LevelGraph& g, const BuildingCheckOptions& opts) {
  return ChamberSystem(g).verify(opts);
}

bool is_building_model(const LevelGraph& g) {
  const int n = g.dimension();
  if (!bands_connected(g, g.full_mask())) return false;
  // A vertex lies in a chamber iff dense chains run from it to both ends.
  std::vector<char> down(g.size(), 0), up(g.size(), 0);
  for (Level l = 0; l <= n; ++l)
    for (VertexId v = 0; v < g.size(); ++v) {
      if (g.level(v) != l) continue;
      down[v] = l == 0;
      for (VertexId w : g.neighbours(v)) down[v] = down[v] || (g.level(w) == l - 1 && down[w]);
    }
  for (Level l = n; l >= 0; --l)
    for (VertexId v = 0; v < g.size(); ++v) {
      if (g.level(v) != l) continue;
      up[v] = l == n;
      for (VertexId w : g.neighbours(v)) up[v] = up[v] || (g.level(w) == l + 1 && up[w]);
    }
  for (VertexId v = 0; v < g.size(); ++v)
    if (!down[v] || !up[v]) return false;
  return true;
}

}  // namespace pseudospace
