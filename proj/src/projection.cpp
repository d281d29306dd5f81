#include <algorithm>
#include <deque>
#include <functional>

#include "pseudospace/closure.hpp"

namespace pseudospace {

namespace {

bool segment_reduced(const LevelGraph& g, const std::vector<VertexId>& p, std::size_t begin, std::size_t end,
                     std::vector<DerivationStep>& out) {
  Level lo = g.level(p[begin]), hi = lo;
  for (std::size_t i = begin; i <= end; ++i) {
    lo = std::min(lo, g.level(p[i]));
    hi = std::max(hi, g.level(p[i]));
  }
  if (hi - lo <= 1) {
    std::vector<VertexId> seg(p.begin() + static_cast<std::ptrdiff_t>(begin),
                              p.begin() + static_cast<std::ptrdiff_t>(end) + 1);
    std::sort(seg.begin(), seg.end());
    if (std::adjacent_find(seg.begin(), seg.end()) != seg.end()) return false;
  } else {
    // Maximal runs avoiding the top level, then runs avoiding the bottom one.
    for (Level skip : {hi, lo}) {
      for (std::size_t i = begin; i <= end;) {
        if (g.level(p[i]) == skip) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j + 1 <= end && g.level(p[j + 1]) != skip) ++j;
        if (!segment_reduced(g, p, i, j, out)) return false;
        i = j + 1;
      }
    }
  }
  out.push_back({begin, end, lo, hi - lo});
  return true;
}

}  // namespace

std::optional<ReducedCert> is_reduced(const LevelGraph& g, const std::vector<VertexId>& path) {
  ReducedCert cert{make_path(g, path), {}, turns(g, path)};
  if (!segment_reduced(g, cert.path.vertices, 0, path.size() - 1, cert.derivation)) return std::nullopt;
  return cert;
}

std::vector<VertexId> turns(const LevelGraph& g, const std::vector<VertexId>& path) {
  std::vector<VertexId> out;
  for (std::size_t i : turn_positions(g, path)) out.push_back(path[i]);
  return out;
}

const char* to_string(TypeClass t) {
  switch (t) {
    case TypeClass::Algebraic: return "algebraic";
    case TypeClass::I: return "I";
    case TypeClass::II: return "II";
    case TypeClass::III: return "III";
    case TypeClass::IV: return "IV";
    case TypeClass::Unclassified: return "unclassified";
  }
  return "?";
}

// Vertices of `closed` where a shortest admissible walk from a first enters
// the set, restricted to entries from which b is still reachable. Turns must
// lie in acl(ab).
std::vector<VertexId> Closure::entry_points(VertexId a, VertexId b, const Mask& closed) const {
  const Mask allowed = acl_pair_mask(a, b);
  std::vector<int> dist(state_vertex_.size(), -1);
  std::deque<std::size_t> queue{start_state(a)};
  dist[start_state(a)] = 0;
  std::vector<VertexId> out;
  int found_at = -1;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    const int d = dist[s];
    if (found_at >= 0 && d >= found_at) break;
    const VertexId v = state_vertex_[s];
    moves(s, [&](std::size_t next, VertexId w, bool turned) {
      if (turned && !allowed.test(v)) return;
      if (closed.test(w)) {
        if (w == b || walk_reaches(next, b, allowed)) {
          found_at = d + 1;
          out.push_back(w);
        }
        return;
      }
      if (dist[next] < 0) {
        dist[next] = d + 1;
        queue.push_back(next);
      }
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexId> Closure::project_onto(VertexId a, const Mask& closed) const {
  const auto& g = *g_;
  if (closed.test(a)) return {a};
  Mask hit(g.size());
  for (auto k = closed.find_first(); k != Mask::npos; k = closed.find_next(k)) {
    auto b = static_cast<VertexId>(k);
    if (!connected(a, b)) continue;
    for (VertexId w : entry_points(a, b, closed)) hit.set(w);
  }
  auto s = to_set(hit);
  std::vector<VertexId> out(s.begin(), s.end());
  std::stable_sort(out.begin(), out.end(), [&](VertexId x, VertexId y) { return g.level(x) < g.level(y); });
  return out;
}

ProjectionFlag Closure::project(VertexId a, const VertexSet& target) const {
  g_->level(a);
  VertexSet k = acl(target);
  return {a, target, project_onto(a, to_mask(*g_, k))};
}

bool Closure::independent(const VertexSet& a, const VertexSet& b, const VertexSet& c) const {
  VertexSet bc = b;
  bc.insert(c.begin(), c.end());
  const Mask k_bc = to_mask(*g_, acl(bc));
  const Mask k_c = to_mask(*g_, acl(c));
  for (VertexId x : acl(a))
    for (VertexId w : project_onto(x, k_bc))
      if (!k_c.test(w)) return false;
  return true;
}

TypeClass Closure::classify_type(VertexId a, const VertexSet& target) const {
  const auto& g = *g_;
  const Level l = g.level(a);
  const Mask k = to_mask(g, acl(target));
  if (k.test(a)) return TypeClass::Algebraic;

  bool below = false, above = false, dense_below = false, dense_above = false;
  for (auto it = k.find_first(); it != Mask::npos; it = k.find_next(it)) {
    auto x = static_cast<VertexId>(it);
    if (!index_.incident(a, x)) continue;
    bool edge = g.has_edge(a, x);
    if (g.level(x) < l) below = true, dense_below = dense_below || edge;
    if (g.level(x) > l) above = true, dense_above = dense_above || edge;
  }
  if (dense_below && dense_above) return TypeClass::IV;
  if (below && above) return TypeClass::III;

  for (auto it = k.find_first(); it != Mask::npos; it = k.find_next(it)) {
    auto b = static_cast<VertexId>(it);
    if (!index_.incident(a, b)) continue;
    Mask res = index_.residue(b);
    auto comp = components(g, res);
    bool touches = false;
    for (auto j = res.find_first(); j != Mask::npos && !touches; j = res.find_next(j))
      touches = k.test(j) && comp[j] == comp[a];
    if (!touches) return TypeClass::II;
  }

  bool linked = false;
  for (auto it = k.find_first(); it != Mask::npos && !linked; it = k.find_next(it))
    linked = connected(a, static_cast<VertexId>(it));
  if (!linked) return TypeClass::I;
  return TypeClass::Unclassified;
}

ProjectionFlag project(const LevelGraph& g, VertexId a, const VertexSet& target) {
  return Closure(g).project(a, target);
}
bool independent(const LevelGraph& g, const VertexSet& a, const VertexSet& b, const VertexSet& c) {
  return Closure(g).independent(a, b, c);
}
TypeClass classify_type(const LevelGraph& g, VertexId a, const VertexSet& target) {
  return Closure(g).classify_type(a, target);
}

}  // namespace pseudospace
