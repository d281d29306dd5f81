#include "pseudospace/closure.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace pseudospace {

Closure::Closure(const LevelGraph& g)
    : g_(&g), index_(g), component_(components(g, g.full_mask())) {
  const int n = g.dimension();
  band_component_.assign(n, std::vector<int>(g.size(), -1));
  band_parent_.assign(n, std::vector<VertexId>(g.size(), static_cast<VertexId>(-1)));
  band_depth_.assign(n, std::vector<int>(g.size(), -1));
  for (int i = 1; i <= n; ++i) {
    Mask band = level_band(g, i - 1, i);
    band_mask_.push_back(band);
    auto& comp = band_component_[i - 1];
    auto& parent = band_parent_[i - 1];
    auto& depth = band_depth_[i - 1];
    int label = 0;
    for (VertexId r = 0; r < g.size(); ++r) {
      if (!band.test(r) || comp[r] >= 0) continue;
      std::deque<VertexId> queue{r};
      comp[r] = label;
      depth[r] = 0;
      while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : g.neighbours(u)) {
          if (!band.test(w) || comp[w] >= 0) continue;
          comp[w] = label;
          parent[w] = u;
          depth[w] = depth[u] + 1;
          queue.push_back(w);
        }
      }
      ++label;
    }
  }
  state_begin_.assign(g.size() + 1, 0);
  for (VertexId v = 0; v < g.size(); ++v) state_begin_[v + 1] = state_begin_[v] + g.degree(v);
  arrive_.resize(state_begin_.back());
  state_vertex_.resize(state_begin_.back() + g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    state_vertex_[state_begin_.back() + v] = v;
    auto nbrs = g.neighbours(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      state_vertex_[state_begin_[v] + k] = v;
      auto back = g.neighbours(nbrs[k]);
      auto pos = static_cast<std::size_t>(std::find(back.begin(), back.end(), v) - back.begin());
      arrive_[state_begin_[v] + k] = state_begin_[nbrs[k]] + pos;
    }
  }
}

std::vector<VertexId> Closure::band_path(int band, VertexId u, VertexId v) const {
  const auto& parent = band_parent_[band - 1];
  const auto& depth = band_depth_[band - 1];
  std::vector<VertexId> left{u}, right{v};
  while (left.back() != right.back()) {
    if (depth[left.back()] >= depth[right.back()])
      left.push_back(parent[left.back()]);
    else
      right.push_back(parent[right.back()]);
  }
  right.pop_back();
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

Mask Closure::band_closure(Mask s) const {
  const auto& g = *g_;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i <= g.dimension(); ++i) {
      const auto& comp = band_component_[i - 1];
      std::vector<VertexId> root_of_comp(g.size(), static_cast<VertexId>(-1));
      for (auto k = s.find_first(); k != Mask::npos; k = s.find_next(k)) {
        auto v = static_cast<VertexId>(k);
        if (comp[v] < 0) continue;
        VertexId& root = root_of_comp[static_cast<std::size_t>(comp[v])];
        if (root == static_cast<VertexId>(-1)) {
          root = v;
          continue;
        }
        for (VertexId w : band_path(i, root, v))
          if (!s.test(w)) s.set(w), changed = true;
      }
    }
  }
  return s;
}

bool Closure::walk_reaches(std::size_t from, VertexId to, const Mask& allowed, std::vector<VertexId>* blocked) const {
  const auto& g = *g_;
  if (state_vertex_[from] == to) return true;
  std::vector<char> seen(state_vertex_.size(), 0);
  std::vector<std::size_t> stack{from};
  seen[from] = 1;
  Mask blocked_mask(g.size());
  while (!stack.empty()) {
    std::size_t s = stack.back();
    stack.pop_back();
    const VertexId v = state_vertex_[s];
    bool hit = false;
    moves(s, [&](std::size_t next, VertexId w, bool turned) {
      if (hit) return;
      if (turned && !allowed.test(v)) {
        blocked_mask.set(v);
        return;
      }
      if (w == to) hit = true;
      if (!seen[next]) seen[next] = 1, stack.push_back(next);
    });
    if (hit) return true;
  }
  if (blocked) {
    blocked->clear();
    for (auto k = blocked_mask.find_first(); k != Mask::npos; k = blocked_mask.find_next(k))
      blocked->push_back(static_cast<VertexId>(k));
  }
  return false;
}

// acl(ab) is the intersection of the traces on g of nice sets of the
// saturated model that contain a walk from a to b. Such a trace D contains
// a, b and every turn of the walk and is band-closed; the monotone stretches
// between turns may be replaced by fresh parallel copies, which hang off the
// band forests of g at vertices incident with both ends of the stretch (the
// gate of the stretch). When that forest already meets D, D must meet the gate.
//
// The search runs over band-closed sets D, branching on the first turn or
// gate that the walks admissible in D fail on.
struct Closure::PairSearch {
  struct Gate {
    int band;                                  // index into band_mask_
    std::vector<std::pair<int, Mask>> trees;   // gate vertices grouped by band tree
    Mask all;
  };

  const Closure& c;
  const LevelGraph& g;
  VertexId a, b;
  std::map<std::pair<VertexId, VertexId>, std::vector<Gate>> cache;

  const std::vector<Gate>& gates(VertexId p, VertexId q) {
    if (g.level(p) > g.level(q)) std::swap(p, q);
    auto [it, fresh] = cache.try_emplace({p, q});
    if (!fresh) return it->second;
    const Mask common = c.index_.residue(p) & c.index_.residue(q);
    for (int band = g.level(p) + 2; band <= g.level(q) - 1; ++band) {
      Gate gate{band - 1, {}, common & c.band_mask_[band - 1]};
      const auto& comp = c.band_component_[band - 1];
      for (auto k = gate.all.find_first(); k != Mask::npos; k = gate.all.find_next(k)) {
        auto tree = std::find_if(gate.trees.begin(), gate.trees.end(),
                                 [&](const auto& t) { return t.first == comp[k]; });
        if (tree == gate.trees.end()) tree = gate.trees.insert(gate.trees.end(), {comp[k], Mask(g.size())});
        tree->second.set(k);
      }
      it->second.push_back(std::move(gate));
    }
    return it->second;
  }

  // Per band, which band trees meet d.
  std::vector<std::vector<char>> occupied(const Mask& d) const {
    std::vector<std::vector<char>> occ(c.band_mask_.size(), std::vector<char>(g.size(), 0));
    for (std::size_t i = 0; i < occ.size(); ++i)
      for (auto k = d.find_first(); k != Mask::npos; k = d.find_next(k))
        if (c.band_mask_[i].test(k)) occ[i][static_cast<std::size_t>(c.band_component_[i][k])] = 1;
    return occ;
  }

  // Band trees claimed by copies so far: a tree that misses d can hold the
  // copies of one stretch only, two would be joined through g.
  using Claims = std::vector<std::pair<int, int>>;

  // Successor claim lists for the stretch p..q; empty when d admits no
  // placement. A copy meets an occupied band tree through a fresh neighbour of
  // some e in d and the gate, which sits on a chain from the far end of the
  // stretch to e, so that shorter stretch must be placeable as well.
  // Placements that claim a tree also record the gate as a repair.
  struct Placed {
    std::vector<Claims> options;
    Mask repairs;
  };
  Mask memo_d;
  std::map<std::tuple<VertexId, VertexId, Claims>, Placed> memo;

  std::vector<Claims> place(VertexId p, VertexId q, const Mask& d, const std::vector<std::vector<char>>& occ,
                            const Claims& claims, Mask& repairs) {
    if (g.level(p) > g.level(q)) std::swap(p, q);
    if (memo_d != d) memo.clear(), memo_d = d;
    std::tuple<VertexId, VertexId, Claims> key{p, q, claims};
    if (auto it = memo.find(key); it != memo.end()) {
      repairs |= it->second.repairs;
      return it->second.options;
    }
    Mask own(g.size());
    auto options = place_uncached(p, q, d, occ, claims, own);
    repairs |= own;
    memo.emplace(std::move(key), Placed{options, own});
    return options;
  }

  std::vector<Claims> place_uncached(VertexId p, VertexId q, const Mask& d, const std::vector<std::vector<char>>& occ,
                                     const Claims& claims, Mask& repairs) {
    std::vector<Claims> out{claims};
    for (const auto& gate : gates(p, q)) {
      std::set<Claims> next;
      bool all_free = true;
      for (const auto& cl : out) {
        bool free = false;
        std::vector<Claims> hooked;
        for (const auto& [tree, s] : gate.trees) {
          if (!occ[static_cast<std::size_t>(gate.band)][static_cast<std::size_t>(tree)]) continue;
          Mask hits = s & d;
          for (auto k = hits.find_first(); k != Mask::npos && !free; k = hits.find_next(k)) {
            auto e = static_cast<VertexId>(k);
            auto sub = g.level(e) == gate.band + 1 ? place(p, e, d, occ, cl, repairs) : place(e, q, d, occ, cl, repairs);
            free = std::find(sub.begin(), sub.end(), cl) != sub.end();
            hooked.insert(hooked.end(), sub.begin(), sub.end());
          }
        }
        if (free) {
          next.insert(cl);
          continue;
        }
        all_free = false;
        next.insert(hooked.begin(), hooked.end());
        for (const auto& [tree, s] : gate.trees) {
          if (occ[static_cast<std::size_t>(gate.band)][static_cast<std::size_t>(tree)]) continue;
          std::pair<int, int> key{gate.band, tree};
          if (std::find(cl.begin(), cl.end(), key) != cl.end()) continue;
          Claims grown = cl;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), key), key);
          next.insert(std::move(grown));
        }
      }
      if (!all_free) repairs |= gate.all;
      out.assign(next.begin(), next.end());
      if (out.empty()) break;
    }
    return out;
  }

  // Whether some walk is admissible in d; otherwise the vertices whose
  // addition would let a walk get further.
  bool admissible(const Mask& d, Mask& repairs) {
    const auto occ = occupied(d);
    using Key = std::tuple<std::size_t, VertexId, Claims>;
    std::set<Key> seen;
    std::vector<Key> stack{{c.start_state(a), a, {}}};
    seen.insert(stack.back());
    while (!stack.empty()) {
      auto [s, last, claims] = stack.back();
      stack.pop_back();
      const VertexId v = c.state_vertex_[s];
      bool found = false;
      c.moves(s, [&](std::size_t next, VertexId w, bool turned) {
        if (found) return;
        std::vector<Claims> options{claims};
        VertexId from = last;
        if (turned) {
          if (!d.test(v)) {
            repairs.set(v);
            return;
          }
          options = place(last, v, d, occ, claims, repairs);
          from = v;
        }
        for (auto& cl : options) {
          if (w == b && !place(from, b, d, occ, cl, repairs).empty()) {
            found = true;
            return;
          }
          Key key{next, from, std::move(cl)};
          if (seen.insert(key).second) stack.push_back(std::move(key));
        }
      });
      if (found) return true;
    }
    return false;
  }

  // An admissible set for one walk: whole gates are added until every
  // stretch is placed.
  Mask close_walk(const std::vector<VertexId>& seq, Mask d) {
    for (VertexId v : seq) d.set(v);
    for (bool changed = true; changed;) {
      changed = false;
      d = c.band_closure(d);
      const auto occ = occupied(d);
      std::vector<Claims> options{{}};
      for (std::size_t j = 0; j + 1 < seq.size() && !options.empty(); ++j) {
        Mask repairs(g.size());
        std::vector<Claims> next;
        for (const auto& cl : options)
          for (auto& grown : place(seq[j], seq[j + 1], d, occ, cl, repairs)) next.push_back(std::move(grown));
        if (next.empty()) {
          d |= repairs;
          changed = true;
        }
        options = std::move(next);
      }
    }
    return d;
  }
};

Mask Closure::acl_pair_mask(VertexId a, VertexId b) const {
  const auto& g = *g_;
  Mask pair(g.size());
  pair.set(a);
  pair.set(b);
  if (a == b || !connected(a, b)) return pair;

  // Vertices every walk turns at lie in every candidate set.
  Mask root = pair;
  Mask all = g.full_mask();
  for (VertexId y = 0; y < g.size(); ++y) {
    if (pair.test(y)) continue;
    all.reset(y);
    if (!walk_reaches(start_state(a), b, all)) root.set(y);
    all.set(y);
  }
  root = band_closure(root);

  PairSearch ps{*this, g, a, b, {}, {}, {}};
  std::optional<Mask> best;
  if (auto turns = fewest_turns(a, b, root)) {
    std::vector<VertexId> seq{a};
    seq.insert(seq.end(), turns->begin(), turns->end());
    seq.push_back(b);
    best = ps.close_walk(seq, root);
  }
  // Every admissible superset of d holds a repair vertex; branch i takes the
  // i-th and rules out the earlier ones, so each superset is reached once.
  std::function<void(const Mask&, Mask)> search = [&](const Mask& d, Mask banned) {
    if (best && best->is_subset_of(d)) return;
    if (d.intersects(banned)) return;
    Mask repairs(g.size());
    if (ps.admissible(d, repairs)) {
      best = best ? (*best & d) : d;
      return;
    }
    repairs -= d;
    repairs -= banned;
    for (auto k = repairs.find_first(); k != Mask::npos; k = repairs.find_next(k)) {
      Mask next = d;
      next.set(k);
      search(band_closure(next), banned);
      banned.set(k);
    }
  };
  search(root, Mask(g.size()));
  return best ? *best : pair;
}

std::optional<std::vector<VertexId>> Closure::fewest_turns(VertexId a, VertexId b, const Mask& free) const {
  const std::size_t none = state_vertex_.size();
  std::vector<int> dist(none, std::numeric_limits<int>::max());
  std::vector<char> done(none, 0);
  std::vector<std::size_t> parent(none, none);
  std::vector<char> turned_at(none, 0);
  std::deque<std::size_t> queue{start_state(a)};
  dist[start_state(a)] = 0;
  std::size_t goal = none;
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    if (done[s]) continue;
    done[s] = 1;
    const VertexId v = state_vertex_[s];
    if (v == b) {
      goal = s;
      break;
    }
    moves(s, [&](std::size_t next, VertexId, bool turned) {
      int cost = turned && !free.test(v) ? 1 : 0;
      if (done[next] || dist[next] <= dist[s] + cost) return;
      dist[next] = dist[s] + cost;
      parent[next] = s;
      turned_at[next] = turned;
      if (cost) queue.push_back(next);
      else queue.push_front(next);
    });
  }
  if (goal == none) return std::nullopt;
  std::vector<VertexId> turns;
  for (std::size_t s = goal; parent[s] != none; s = parent[s])
    if (turned_at[s]) turns.push_back(state_vertex_[parent[s]]);
  std::reverse(turns.begin(), turns.end());
  return turns;
}

VertexSet Closure::acl_pair(VertexId a, VertexId b) const {
  g_->level(a);
  g_->level(b);
  return to_set(acl_pair_mask(a, b));
}

VertexSet Closure::acl(const VertexSet& a) const {
  Mask out = to_mask(*g_, a);
  std::vector<VertexId> members(a.begin(), a.end());
  for (std::size_t p = 0; p < members.size(); ++p)
    for (std::size_t q = p + 1; q < members.size(); ++q) out |= acl_pair_mask(members[p], members[q]);
  return to_set(out);
}

bool Closure::nice(const VertexSet& a) const {
  Mask s = to_mask(*g_, a);
  if (band_closure(s) != s) return false;
  auto inner = components(*g_, s);
  std::vector<int> seen(g_->size(), -1);
  for (auto k = s.find_first(); k != Mask::npos; k = s.find_next(k)) {
    int& label = seen[static_cast<std::size_t>(component_[k])];
    if (label < 0)
      label = inner[k];
    else if (label != inner[k])
      return false;
  }
  return true;
}

VertexSet Closure::nice_hull(const VertexSet& a) const {
  const auto& g = *g_;
  Mask s = to_mask(g, a);
  for (bool changed = true; changed;) {
    changed = false;
    s = band_closure(s);
    auto inner = components(g, s);
    std::vector<VertexId> rep(g.size(), static_cast<VertexId>(-1));
    for (auto k = s.find_first(); k != Mask::npos; k = s.find_next(k)) {
      auto v = static_cast<VertexId>(k);
      VertexId& r = rep[static_cast<std::size_t>(component_[v])];
      if (r == static_cast<VertexId>(-1)) {
        r = v;
      } else if (inner[r] != inner[v]) {
        for (VertexId w : shortest_path(g, g.full_mask(), r, v)) s.set(w);
        changed = true;
        break;
      }
    }
  }
  return to_set(s);
}

VertexSet acl_pair(const LevelGraph& g, VertexId a, VertexId b) { return Closure(g).acl_pair(a, b); }
VertexSet acl(const LevelGraph& g, const VertexSet& a) { return Closure(g).acl(a); }
bool nice_check(const LevelGraph& g, const VertexSet& a) { return Closure(g).nice(a); }
VertexSet nice_hull(const LevelGraph& g, const VertexSet& a) { return Closure(g).nice_hull(a); }

NiceSubsets::NiceSubsets(const LevelGraph& g, std::size_t guard) : size_(g.size()) {
  if (g.size() > guard || g.size() > 30)
    throw std::length_error("nice-subset enumeration limited to " + std::to_string(std::min<std::size_t>(guard, 30)) +
                            " vertices");
  using Bits = std::uint64_t;
  const std::size_t n = g.size();
  Closure closure(g);
  std::vector<Bits> adj(n, 0), comp(n, 0);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId w : g.neighbours(v)) adj[v] |= Bits{1} << w;
  auto labels = components(g, g.full_mask());
  for (VertexId v = 0; v < n; ++v)
    for (VertexId w = 0; w < n; ++w)
      if (labels[v] == labels[w]) comp[v] |= Bits{1} << w;
  struct Geodesic {
    Bits ends;
    Bits path;
  };
  // S is band-closed iff it contains the band closure of each of its pairs.
  std::vector<Geodesic> geodesics;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      Mask pair(n);
      pair.set(u);
      pair.set(v);
      Mask path = closure.band_closure(pair);
      if (path.count() <= 2) continue;
      Bits bits = 0;
      for (auto k = path.find_first(); k != Mask::npos; k = path.find_next(k)) bits |= Bits{1} << k;
      geodesics.push_back({(Bits{1} << u) | (Bits{1} << v), bits});
    }
  }
  const Bits limit = Bits{1} << n;
  for (Bits s = 0; s < limit; ++s) {
    bool ok = true;
    for (const auto& geo : geodesics)
      if ((s & geo.ends) == geo.ends && (geo.path & ~s)) {
        ok = false;
        break;
      }
    // Each connected piece of s must be all of s inside its ambient component.
    for (Bits rest = s; rest && ok;) {
      Bits piece = rest & (~rest + 1);
      for (;;) {
        Bits next = piece;
        for (Bits k = piece; k; k &= k - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(k))] & s;
        if (next == piece) break;
        piece = next;
      }
      if ((comp[static_cast<std::size_t>(std::countr_zero(piece))] & s) != piece) ok = false;
      rest &= ~piece;
    }
    if (ok) members_.push_back(s);
  }
}

VertexSet NiceSubsets::intersection_containing(const VertexSet& a) const {
  std::uint64_t want = 0;
  for (VertexId v : a) {
    if (v >= size_) throw std::out_of_range("unknown vertex id " + std::to_string(v));
    want |= std::uint64_t{1} << v;
  }
  std::uint64_t out = size_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size_) - 1;
  for (auto m : members_)
    if ((m & want) == want) out &= m;
  VertexSet result;
  for (VertexId v = 0; v < size_; ++v)
    if (out >> v & 1) result.insert(v);
  return result;
}

VertexSet acl_oracle(const LevelGraph& g, const VertexSet& a, std::size_t guard) {
  return NiceSubsets(g, guard).intersection_containing(a);
}

}  // namespace pseudospace
