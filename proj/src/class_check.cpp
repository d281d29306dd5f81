#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "pseudospace/amalgam.hpp"

namespace pseudospace {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

std::vector<int> bfs_distances(const LevelGraph& g, const Mask& within, VertexId from) {
  std::vector<int> dist(g.size(), kInf);
  if (!within.test(from)) return dist;
  std::deque<VertexId> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbours(u))
      if (within.test(w) && dist[w] == kInf) dist[w] = dist[u] + 1, queue.push_back(w);
  }
  return dist;
}

// A closed cycle inside `within`, or empty when the induced subgraph is a forest.
std::vector<VertexId> find_cycle(const LevelGraph& g, const Mask& within) {
  std::vector<VertexId> parent(g.size(), static_cast<VertexId>(-1));
  std::vector<int> depth(g.size(), -1);
  for (VertexId root = 0; root < g.size(); ++root) {
    if (!within.test(root) || depth[root] >= 0) continue;
    std::vector<VertexId> stack{root};
    depth[root] = 0;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbours(u)) {
        if (!within.test(w) || w == parent[u]) continue;
        if (depth[w] < 0) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          stack.push_back(w);
          continue;
        }
        // Non-tree edge: walk both ends up to the common ancestor.
        std::vector<VertexId> left{u}, right{w};
        while (left.back() != right.back()) {
          if (depth[left.back()] >= depth[right.back()])
            left.push_back(parent[left.back()]);
          else
            right.push_back(parent[right.back()]);
        }
        right.pop_back();
        left.insert(left.end(), right.rbegin(), right.rend());
        left.push_back(u);
        return left;
      }
    }
  }
  return {};
}

// A simple cycle (a, b, ..., b', a) on levels <= level(a), with b, b' one
// level below a, that leaves R(a) although R(a) has no path from b to b' of
// length at most k-1 on levels i-2, i-1 (`single_band`) or on all levels
// below a. Cycles longer than `max_len` are ignored.
std::optional<std::vector<VertexId>> residue_cycle_witness(const LevelGraph& g, const IncidenceIndex& index,
                                                           VertexId a, int max_len, bool single_band) {
  Level i = g.level(a);
  std::vector<VertexId> below;
  for (VertexId w : g.neighbours(a))
    if (g.level(w) == i - 1) below.push_back(w);
  if (below.size() < 2) return std::nullopt;

  Mask res = index.residue(a);
  Mask replacement = res;
  if (i >= 2)
    replacement &= level_band(g, single_band ? i - 2 : 0, i - 1);
  else
    replacement.reset();
  Mask avoid_a = level_band(g, 0, i);
  avoid_a.reset(a);

  std::vector<VertexId> path;
  std::vector<char> on_path(g.size(), 0);
  for (std::size_t p = 0; p < below.size(); ++p) {
    for (std::size_t q = p + 1; q < below.size(); ++q) {
      VertexId b = below[p], b2 = below[q];
      int d = bfs_distances(g, replacement, b)[b2];
      // The cycle has length L + 2 for a path of length L, so we need L <= d - 2.
      int limit = d >= kInf ? kInf : d - 2;
      limit = std::min(limit, max_len - 2);
      if (limit < 2) continue;
      auto to_target = bfs_distances(g, avoid_a, b2);
      if (to_target[b] > limit) continue;
      bool found = false;
      std::function<void(VertexId, int)> dfs = [&](VertexId u, int outside) {
        for (VertexId w : g.neighbours(u)) {
          if (found) return;
          if (!avoid_a.test(w) || on_path[w]) continue;
          int len = static_cast<int>(path.size());
          if (len + to_target[w] > limit) continue;
          int out = outside + (res.test(w) ? 0 : 1);
          path.push_back(w);
          if (w == b2) {
            if (out > 0) found = true;
          } else {
            on_path[w] = 1;
            dfs(w, out);
            on_path[w] = 0;
          }
          if (!found) path.pop_back();
        }
      };
      path = {b};
      on_path[b] = 1;
      dfs(b, 0);
      on_path[b] = 0;
      if (found) {
        std::vector<VertexId> cycle{a};
        cycle.insert(cycle.end(), path.begin(), path.end());
        cycle.push_back(a);
        return cycle;
      }
    }
  }
  return std::nullopt;
}

// Band-path formulation: for a simple cycle in levels [lo, i] turning down at
// a in V_i, R(a) must contain a path b -> b' on levels [lo, i-1] of length at
// most k-1 whose V_lo vertices all occur in the cycle.
std::optional<std::vector<VertexId>> band_cycle_witness(const LevelGraph& g, const IncidenceIndex& index,
                                                        const std::vector<PathCert>& cycles) {
  for (const auto& c : cycles) {
    const auto& vs = c.vertices;
    std::size_t k = vs.size() - 1;
    if (c.band_low + c.band_width > g.dimension()) continue;
    Level lo = c.band_low, hi = c.band_low + c.band_width;
    for (std::size_t p = 0; p < k; ++p) {
      VertexId a = vs[p], b = vs[(p + k - 1) % k], b2 = vs[p + 1];
      if (g.level(a) != hi || g.level(b) != hi - 1 || g.level(b2) != hi - 1) continue;
      Mask allowed = index.residue(a) & level_band(g, lo, hi - 1);
      for (VertexId v = 0; v < g.size(); ++v)
        if (allowed.test(v) && g.level(v) == lo && std::find(vs.begin(), vs.end(), v) == vs.end())
          allowed.reset(v);
      int d = bfs_distances(g, allowed, b)[b2];
      if (d > static_cast<int>(k) - 1) return vs;
    }
  }
  return std::nullopt;
}

std::optional<Violation> first_meet_failure(const IncidenceIndex& index, bool use_join, int condition) {
  const auto& g = index.graph();
  std::map<Mask, VertexId> realised;
  for (VertexId z = 0; z < g.size(); ++z)
    realised.emplace(use_join ? index.top(z) : index.bottom(z), z);
  for (VertexId x = 0; x < g.size(); ++x) {
    Mask ex = use_join ? index.top(x) : index.bottom(x);
    if (ex.none()) continue;
    for (VertexId y = x + 1; y < g.size(); ++y) {
      Mask common = ex & (use_join ? index.top(y) : index.bottom(y));
      if (common.none() || realised.count(common)) continue;
      return Violation{condition, {x, y},
                       use_join ? "common top-level incidences generate no vertex"
                                : "common level-0 incidences meet in no vertex"};
    }
  }
  return std::nullopt;
}

std::optional<Violation> first_band_cycle(const LevelGraph& g, const Mask& within, Level lo) {
  for (int i = 1; i <= g.dimension(); ++i) {
    auto cycle = find_cycle(g, within & level_band(g, i - 1, i));
    if (!cycle.empty())
      return Violation{1, cycle, "E_" + std::to_string(i + lo) + "-cycle"};
  }
  return std::nullopt;
}

// Conditions 4 and 5 (or Sigma 4 when `extremes_only`), reported with ids
// `down_id` and `up_id`.
void residue_cycles(const LevelGraph& g, const IncidenceIndex& index, const LevelGraph& dual,
                    const IncidenceIndex& dual_index, int max_len, bool extremes_only, bool single_band,
                    int down_id, int up_id, ClassReport& report) {
  for (VertexId a = 0; a < g.size(); ++a) {
    if (extremes_only && g.level(a) != g.dimension()) continue;
    if (auto w = residue_cycle_witness(g, index, a, max_len, single_band)) {
      report.violations.push_back({down_id, *w, "cycle leaves R(a) with no short path below a"});
      break;
    }
  }
  for (VertexId a = 0; a < dual.size(); ++a) {
    if (extremes_only && dual.level(a) != dual.dimension()) continue;
    if (auto w = residue_cycle_witness(dual, dual_index, a, max_len, single_band)) {
      report.violations.push_back({up_id, *w, "cycle leaves R(a) with no short path above a"});
      break;
    }
  }
}

}  // namespace

bool bands_connected(const LevelGraph& g, const Mask& within) {
  for (int i = 1; i <= g.dimension(); ++i)
    if (!is_connected(g, within & level_band(g, i - 1, i))) return false;
  return true;
}

ClassReport check_class(const LevelGraph& g, ClassVariant variant, const CheckOptions& opts) {
  ClassReport report;
  IncidenceIndex index(g);
  if (auto v = first_band_cycle(g, g.full_mask(), 0)) report.violations.push_back(*v);
  if (auto v = first_meet_failure(index, false, 2)) report.violations.push_back(*v);
  if (auto v = first_meet_failure(index, true, 3)) report.violations.push_back(*v);

  LevelGraph dual = dualize(g);
  IncidenceIndex dual_index(dual);
  if (variant == ClassVariant::KnBandPaths) {
    if (auto w = band_cycle_witness(g, index, enumerate_simple_cycles(g, opts.cycle_bound)))
      report.violations.push_back({4, *w, "no band path below the turning vertex"});
    if (auto w = band_cycle_witness(dual, dual_index, enumerate_simple_cycles(dual, opts.cycle_bound)))
      report.violations.push_back({5, *w, "no band path above the turning vertex"});
  } else {
    residue_cycles(g, index, dual, dual_index, kInf, false, variant == ClassVariant::KnSingleBand, 4, 5, report);
  }

  if (variant == ClassVariant::KnPrime) {
    for (int i = 1; i <= g.dimension(); ++i) {
      Mask band = level_band(g, i - 1, i);
      if (!is_connected(g, band)) {
        auto members = to_set(band);
        report.violations.push_back({6, std::vector<VertexId>(members.begin(), members.end()),
                                     "graph is not E_" + std::to_string(i) + "-connected"});
        break;
      }
    }
    bool done = false;
    for (VertexId a = 0; a < g.size() && !done; ++a) {
      Level j = g.level(a);
      Mask res = index.residue(a);
      for (int i = 1; i <= g.dimension() && !done; ++i) {
        if (i - 1 == j || i == j) continue;
        if (!is_connected(g, res & level_band(g, i - 1, i))) {
          report.violations.push_back({6, {a}, "residue is not E_" + std::to_string(i) + "-connected"});
          done = true;
        }
      }
    }
  }
  report.stats["vertices"] = static_cast<double>(g.size());
  report.stats["edges"] = static_cast<double>(g.edge_count());
  return report;
}

namespace {

struct SigmaContext {
  int cycle_bound;
  std::map<Mask, std::optional<Violation>> memo;
  std::size_t original_size;
  std::size_t min_degree = std::numeric_limits<std::size_t>::max();
};

std::optional<Violation> sigma_rec(const LevelGraph& g, const std::vector<VertexId>& orig, SigmaContext& ctx);

std::optional<Violation> sigma_sub(const LevelGraph& g, const std::vector<VertexId>& orig, const Mask& keep,
                                   Level offset, SigmaContext& ctx) {
  auto [sub, back] = induced_subgraph(g, keep, g.dimension() - 1, offset);
  std::vector<VertexId> sub_orig(back.size());
  Mask key(ctx.original_size);
  for (std::size_t k = 0; k < back.size(); ++k) {
    sub_orig[k] = orig[back[k]];
    key.set(sub_orig[k]);
  }
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  auto result = sigma_rec(sub, sub_orig, ctx);
  ctx.memo.emplace(std::move(key), result);
  return result;
}

std::vector<Violation> sigma_all(const LevelGraph& g, const std::vector<VertexId>& orig, SigmaContext& ctx,
                                 bool first_only) {
  std::vector<Violation> out;
  auto relabel = [&](Violation v) {
    for (auto& w : v.witness) w = orig[w];
    return v;
  };
  if (g.dimension() == 1) {
    for (VertexId v = 0; v < g.size(); ++v) ctx.min_degree = std::min(ctx.min_degree, g.degree(v));
    if (auto c = first_band_cycle(g, g.full_mask(), 0)) {
      c->detail = "pseudoplane contains a cycle";
      out.push_back(relabel(*c));
    }
    return out;
  }
  auto done = [&] { return first_only && !out.empty(); };

  // Sigma 1: the two codimension-one band restrictions.
  for (Level offset : {0, 1}) {
    if (done()) break;
    if (auto v = sigma_sub(g, orig, level_band(g, offset, offset + g.dimension() - 1), offset, ctx)) {
      v->condition = 1;
      v->detail = (offset == 0 ? "lower" : "upper") + std::string(" band: ") + v->detail;
      out.push_back(*v);
      break;
    }
  }
  // Sigma 2: residues of extreme vertices.
  IncidenceIndex index(g);
  for (VertexId x = 0; x < g.size() && !done(); ++x) {
    Level l = g.level(x);
    if (l != 0 && l != g.dimension()) continue;
    if (auto v = sigma_sub(g, orig, index.residue(x), l == 0 ? 1 : 0, ctx)) {
      v->condition = 2;
      v->detail = "residue of " + std::to_string(orig[x]) + ": " + v->detail;
      v->witness.insert(v->witness.begin(), orig[x]);
      out.push_back(*v);
      break;
    }
  }
  // Sigma 3.
  for (bool use_join : {false, true}) {
    if (done()) break;
    if (auto v = first_meet_failure(index, use_join, 3)) out.push_back(relabel(*v));
  }
  // Sigma 4, bounded.
  if (!done()) {
    ClassReport r;
    LevelGraph dual = dualize(g);
    IncidenceIndex dual_index(dual);
    residue_cycles(g, index, dual, dual_index, ctx.cycle_bound, true, false, 4, 4, r);
    for (auto& v : r.violations) out.push_back(relabel(v));
  }
  return out;
}

std::optional<Violation> sigma_rec(const LevelGraph& g, const std::vector<VertexId>& orig, SigmaContext& ctx) {
  auto all = sigma_all(g, orig, ctx, true);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace

ClassReport check_sigma(const LevelGraph& g, int cycle_bound) {
  ClassReport report;
  SigmaContext ctx{cycle_bound, {}, g.size()};
  std::vector<VertexId> orig(g.size());
  for (VertexId v = 0; v < g.size(); ++v) orig[v] = v;
  for (auto& v : sigma_all(g, orig, ctx, false)) {
    if (!report.violates(v.condition)) report.violations.push_back(std::move(v));
  }
  if (ctx.min_degree != std::numeric_limits<std::size_t>::max())
    report.stats["pseudoplane_min_degree"] = static_cast<double>(ctx.min_degree);
  report.stats["substructures_checked"] = static_cast<double>(ctx.memo.size());
  return report;
}

}  // namespace pseudospace
