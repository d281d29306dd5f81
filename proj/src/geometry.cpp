#include "pseudospace/geometry.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace pseudospace {

IncidenceIndex::IncidenceIndex(const LevelGraph& g)
    : graph_(&g), up_(g.size(), Mask(g.size())), down_(g.size(), Mask(g.size())),
      level0_(g.size()), level_top_(g.size()) {
  std::vector<VertexId> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return g.level(a) > g.level(b); });
  for (VertexId v : order) {
    up_[v].set(v);
    for (VertexId w : g.neighbours(v))
      if (g.level(w) == g.level(v) + 1) up_[v] |= up_[w];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId v = *it;
    down_[v].set(v);
    for (VertexId w : g.neighbours(v))
      if (g.level(w) == g.level(v) - 1) down_[v] |= down_[w];
  }
  for (VertexId v = 0; v < g.size(); ++v) {
    if (g.level(v) == 0) level0_.set(v);
    if (g.level(v) == g.dimension()) level_top_.set(v);
  }
}

bool IncidenceIndex::incident(VertexId x, VertexId y) const {
  const auto& g = *graph_;
  Level lx = g.level(x), ly = g.level(y);
  if (x == y) return true;
  if (lx == ly) return false;
  return lx < ly ? up_[x].test(y) : up_[y].test(x);
}

Mask IncidenceIndex::residue(VertexId v) const {
  Mask r = up_[v] | down_[v];
  r.reset(v);
  return r;
}

Mask IncidenceIndex::bottom(VertexId v) const { return down_[v] & level0_; }
Mask IncidenceIndex::top(VertexId v) const { return up_[v] & level_top_; }

bool incident(const LevelGraph& g, VertexId x, VertexId y) {
  // Direct search avoids building the whole index for a one-off query.
  Level lx = g.level(x), ly = g.level(y);
  if (x == y) return true;
  if (lx == ly) return false;
  if (lx > ly) std::swap(x, y), std::swap(lx, ly);
  std::vector<VertexId> frontier{x};
  for (Level l = lx + 1; l <= ly && !frontier.empty(); ++l) {
    std::vector<VertexId> next;
    for (VertexId u : frontier)
      for (VertexId w : g.neighbours(u))
        if (g.level(w) == l) next.push_back(w);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  return std::binary_search(frontier.begin(), frontier.end(), y);
}

VertexSet residue(const LevelGraph& g, VertexId x) {
  g.level(x);
  return to_set(IncidenceIndex(g).residue(x));
}

namespace {

MeetResult common_witness(const IncidenceIndex& index, VertexId x, VertexId y,
                          Mask (IncidenceIndex::*extreme)(VertexId) const) {
  const auto& g = index.graph();
  g.level(x);
  g.level(y);
  MeetResult r;
  Mask common = (index.*extreme)(x) & (index.*extreme)(y);
  r.common = to_set(common);
  if (common.none()) {
    r.kind = MeetResult::Kind::Empty;
    return r;
  }
  for (VertexId z = 0; z < g.size(); ++z)
    if ((index.*extreme)(z) == common) r.witnesses.insert(z);
  r.kind = r.witnesses.empty() ? MeetResult::Kind::NoWitness : MeetResult::Kind::Vertex;
  return r;
}

}  // namespace

MeetResult meet(const IncidenceIndex& index, VertexId x, VertexId y) {
  return common_witness(index, x, y, &IncidenceIndex::bottom);
}
MeetResult join(const IncidenceIndex& index, VertexId x, VertexId y) {
  return common_witness(index, x, y, &IncidenceIndex::top);
}
MeetResult meet(const LevelGraph& g, VertexId x, VertexId y) { return meet(IncidenceIndex(g), x, y); }
MeetResult join(const LevelGraph& g, VertexId x, VertexId y) { return join(IncidenceIndex(g), x, y); }

std::optional<Flag> make_flag(const IncidenceIndex& index, std::span<const VertexId> vs) {
  const auto& g = index.graph();
  if (vs.empty()) throw GraphError("flag query needs at least one vertex");
  for (VertexId v : vs) g.level(v);
  std::vector<VertexId> members(vs.begin(), vs.end());
  std::sort(members.begin(), members.end(),
            [&](VertexId a, VertexId b) { return g.level(a) < g.level(b); });
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i] == members[j] || !index.incident(members[i], members[j])) return std::nullopt;
  Flag f;
  f.dense = members.size() >= 2;
  for (std::size_t i = 1; i < members.size() && f.dense; ++i)
    f.dense = g.level(members[i]) == g.level(members[i - 1]) + 1 && g.has_edge(members[i - 1], members[i]);
  f.members = std::move(members);
  return f;
}

FlagKind is_flag(const IncidenceIndex& index, std::span<const VertexId> vs) {
  auto f = make_flag(index, vs);
  if (!f) return FlagKind::NotFlag;
  return f->dense ? FlagKind::DenseFlag : FlagKind::Flag;
}

FlagKind is_flag(const LevelGraph& g, std::span<const VertexId> vs) { return is_flag(IncidenceIndex(g), vs); }

PathCert make_path(const LevelGraph& g, std::vector<VertexId> vertices) {
  if (vertices.empty()) throw GraphError("empty path");
  PathCert p;
  Level lo = g.level(vertices.front()), hi = lo;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    Level l = g.level(vertices[i]);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
    if (i > 0 && !g.has_edge(vertices[i - 1], vertices[i])) throw GraphError("consecutive path vertices are not adjacent");
  }
  p.band_low = lo;
  p.band_width = hi - lo;
  if (vertices.size() >= 4 && vertices.front() == vertices.back()) {
    std::vector<VertexId> inner(vertices.begin(), vertices.end() - 1);
    std::sort(inner.begin(), inner.end());
    p.simple_cycle = std::adjacent_find(inner.begin(), inner.end()) == inner.end();
  }
  p.vertices = std::move(vertices);
  return p;
}

std::vector<std::size_t> turn_positions(const LevelGraph& g, std::span<const VertexId> path) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (g.level(path[i - 1]) == g.level(path[i + 1])) out.push_back(i);
  return out;
}

std::vector<PathCert> enumerate_simple_cycles(const LevelGraph& g, int max_len) {
  std::vector<PathCert> out;
  std::vector<VertexId> path;
  std::vector<char> on_path(g.size(), 0);
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId start, VertexId u) {
    for (VertexId w : g.neighbours(u)) {
      if (w == start && path.size() >= 3 && path[1] < path.back()) {
        auto closed = path;
        closed.push_back(start);
        out.push_back(make_path(g, std::move(closed)));
        continue;
      }
      if (w <= start || on_path[w] || static_cast<int>(path.size()) >= max_len) continue;
      on_path[w] = 1;
      path.push_back(w);
      dfs(start, w);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (VertexId s = 0; s < g.size(); ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(s, s);
    on_path[s] = 0;
  }
  std::sort(out.begin(), out.end(), [](const PathCert& a, const PathCert& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  return out;
}

LevelGraph dualize(const LevelGraph& g) {
  LevelGraph d(g.dimension());
  for (VertexId v = 0; v < g.size(); ++v) d.add_vertex(g.dimension() - g.level(v));
  for (auto [u, v] : g.edges()) d.add_edge(u, v);
  return d;
}

Mask level_band(const LevelGraph& g, Level lo, Level hi) {
  Mask m(g.size());
  for (VertexId v = 0; v < g.size(); ++v)
    if (g.level(v) >= lo && g.level(v) <= hi) m.set(v);
  return m;
}

std::vector<int> components(const LevelGraph& g, const Mask& within) {
  std::vector<int> comp(g.size(), -1);
  int next = 0;
  for (VertexId s = 0; s < g.size(); ++s) {
    if (!within.test(s) || comp[s] >= 0) continue;
    std::vector<VertexId> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbours(u))
        if (within.test(w) && comp[w] < 0) comp[w] = next, stack.push_back(w);
    }
    ++next;
  }
  return comp;
}

std::vector<VertexId> shortest_path(const LevelGraph& g, const Mask& within, VertexId from, VertexId to) {
  if (!within.test(from) || !within.test(to)) return {};
  std::vector<VertexId> parent(g.size(), static_cast<VertexId>(-1));
  std::vector<char> seen(g.size(), 0);
  std::deque<VertexId> queue{from};
  seen[from] = 1;
  while (!queue.empty() && !seen[to]) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbours(u))
      if (within.test(w) && !seen[w]) seen[w] = 1, parent[w] = u, queue.push_back(w);
  }
  if (!seen[to]) return {};
  std::vector<VertexId> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool is_connected(const LevelGraph& g, const Mask& within) {
  auto comp = components(g, within);
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c <= 0; });
}

VertexId path_fn(const LevelGraph& g, int band, int k, VertexId x, VertexId y) {
  g.level(x);
  g.level(y);
  if (band < 1 || band > g.dimension() || k < 1 || x == y) return x;
  Mask within = level_band(g, band - 1, band);
  if (!within.test(x) || !within.test(y)) return x;
  // BFS counting shortest paths, saturated at 2.
  std::vector<int> dist(g.size(), -1), count(g.size(), 0);
  std::vector<VertexId> parent(g.size(), x);
  std::deque<VertexId> queue{x};
  dist[x] = 0;
  count[x] = 1;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbours(u)) {
      if (!within.test(w)) continue;
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        count[w] = count[u];
        parent[w] = u;
        queue.push_back(w);
      } else if (dist[w] == dist[u] + 1) {
        count[w] = std::min(2, count[w] + count[u]);
      }
    }
  }
  if (dist[y] < k || count[y] != 1) return x;
  std::vector<VertexId> path{y};
  while (path.back() != x) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path[static_cast<std::size_t>(k)];
}

LevelGraph chamber_chain(int dimension) {
  LevelGraph g(dimension);
  for (Level l = 0; l <= dimension; ++l) {
    g.add_vertex(l);
    if (l > 0) g.add_edge(static_cast<VertexId>(l - 1), static_cast<VertexId>(l));
  }
  return g;
}

}  // namespace pseudospace
