#include "pseudospace/amalgam.hpp"

#include <deque>
#include <random>
#include <set>
#include <string>
#include <tuple>

namespace pseudospace {

const char* to_string(ExtensionKind kind) {
  switch (kind) {
    case ExtensionKind::AttachLeaf: return "AttachLeaf";
    case ExtensionKind::SplitFlag: return "SplitFlag";
    case ExtensionKind::SeedChamber: return "SeedChamber";
  }
  return "?";
}

const char* to_string(BuildVariant variant) {
  return variant == BuildVariant::Prime ? "prime" : "saturated";
}

ExtensionKind parse_extension_kind(const std::string& s) {
  if (s == "AttachLeaf") return ExtensionKind::AttachLeaf;
  if (s == "SplitFlag") return ExtensionKind::SplitFlag;
  if (s == "SeedChamber") return ExtensionKind::SeedChamber;
  throw GraphError("unknown extension kind '" + s + "'");
}

BuildVariant parse_build_variant(const std::string& s) {
  if (s == "saturated") return BuildVariant::Saturated;
  if (s == "prime") return BuildVariant::Prime;
  throw GraphError("unknown variant '" + s + "'");
}

std::optional<ExtensionStep> classify_last_vertex(const LevelGraph& g, const Mask& within, VertexId v) {
  Level l = g.level(v);
  std::vector<VertexId> nbrs;
  for (VertexId w : g.neighbours(v))
    if (within.test(w)) nbrs.push_back(w);
  if (nbrs.size() <= 1) return ExtensionStep{ExtensionKind::AttachLeaf, l, nbrs};
  if (nbrs.size() != 2) return std::nullopt;
  VertexId x = nbrs[0], z = nbrs[1];
  if (g.level(x) > g.level(z)) std::swap(x, z);
  if (g.level(x) != l - 1 || g.level(z) != l + 1) return std::nullopt;
  for (VertexId y : g.neighbours(x))
    if (y != v && within.test(y) && g.level(y) == l && g.has_edge(y, z))
      return ExtensionStep{ExtensionKind::SplitFlag, l, {x, z}};
  return std::nullopt;
}

std::optional<ExtensionStep> is_one_point_extension(const LevelGraph& small, const LevelGraph& big, VertexId v) {
  if (!big.contains(v) || big.size() != small.size() + 1 || big.dimension() != small.dimension())
    throw GraphError("graph is not the smaller graph plus one vertex");
  Mask rest = big.full_mask();
  rest.reset(v);
  if (induced_subgraph(big, rest, big.dimension()).first != small)
    throw GraphError("graph is not the smaller graph plus one vertex");
  auto step = classify_last_vertex(big, big.full_mask(), v);
  if (step)
    for (auto& a : step->anchors)
      if (a > v) --a;
  return step;
}

namespace {

bool peel(const LevelGraph& g, Mask& remaining, const Mask& base, std::set<Mask>& dead) {
  if (remaining == base) return true;
  if (dead.count(remaining)) return false;
  std::vector<VertexId> leaves, splits;
  Mask free = remaining - base;
  for (auto i = free.find_first(); i != Mask::npos; i = free.find_next(i)) {
    auto v = static_cast<VertexId>(i);
    if (auto step = classify_last_vertex(g, remaining, v))
      (step->kind == ExtensionKind::AttachLeaf ? leaves : splits).push_back(v);
  }
  for (const auto* group : {&leaves, &splits}) {
    for (VertexId v : *group) {
      remaining.reset(v);
      bool ok = peel(g, remaining, base, dead);
      remaining.set(v);
      if (ok) return true;
    }
  }
  dead.insert(remaining);
  return false;
}

}  // namespace

bool is_strong(const LevelGraph& g, const VertexSet& a) {
  Mask base = to_mask(g, a);
  Mask remaining = g.full_mask();
  std::set<Mask> dead;
  return peel(g, remaining, base, dead);
}

namespace {

void check_embedding(const LevelGraph& a, const LevelGraph& target, const std::vector<VertexId>& map,
                     const char* name) {
  if (map.size() != a.size()) throw GraphError(std::string("embedding into ") + name + " has the wrong size");
  std::set<VertexId> image;
  for (VertexId k = 0; k < a.size(); ++k) {
    if (!target.contains(map[k]) || !image.insert(map[k]).second)
      throw GraphError(std::string("embedding into ") + name + " is not injective");
    if (target.level(map[k]) != a.level(k))
      throw GraphError(std::string("embedding into ") + name + " does not preserve levels");
  }
  for (VertexId u = 0; u < a.size(); ++u)
    for (VertexId v = u + 1; v < a.size(); ++v)
      if (a.has_edge(u, v) != target.has_edge(map[u], map[v]))
        throw GraphError(std::string("embedding into ") + name + " is not induced");
}

}  // namespace

Amalgam free_amalgam(const LevelGraph& a, const LevelGraph& b, const LevelGraph& c,
                     const std::vector<VertexId>& a_in_b, const std::vector<VertexId>& a_in_c) {
  if (a.dimension() != b.dimension() || a.dimension() != c.dimension())
    throw GraphError("amalgam components have different dimensions");
  check_embedding(a, b, a_in_b, "B");
  check_embedding(a, c, a_in_c, "C");
  Amalgam out{b, {}, std::vector<VertexId>(c.size(), static_cast<VertexId>(-1))};
  out.from_b.resize(b.size());
  for (VertexId v = 0; v < b.size(); ++v) out.from_b[v] = v;
  for (VertexId k = 0; k < a.size(); ++k) out.from_c[a_in_c[k]] = a_in_b[k];
  for (VertexId v = 0; v < c.size(); ++v)
    if (out.from_c[v] == static_cast<VertexId>(-1)) out.from_c[v] = out.graph.add_vertex(c.level(v));
  for (auto [u, v] : c.edges()) out.graph.add_edge(out.from_c[u], out.from_c[v]);
  return out;
}

VertexId apply_extension(LevelGraph& g, const ExtensionStep& step, BuildVariant variant) {
  const Level l = step.level;
  const int n = g.dimension();
  if (l < 0 || l > n) throw GraphError("extension level out of range");
  for (VertexId a : step.anchors)
    if (!g.contains(a)) throw GraphError("unknown anchor " + std::to_string(a));

  switch (step.kind) {
    case ExtensionKind::AttachLeaf: {
      if (step.anchors.size() > 1) throw GraphError("AttachLeaf takes at most one anchor");
      if (step.anchors.size() == 1 && std::abs(g.level(step.anchors[0]) - l) != 1)
        throw GraphError("AttachLeaf anchor is not on an adjacent level");
      if (variant == BuildVariant::Prime) {
        LevelGraph trial = g;
        VertexId v = trial.add_vertex(l);
        if (!step.anchors.empty()) trial.add_edge(v, step.anchors[0]);
        if (!bands_connected(trial, trial.full_mask()))
          throw GraphError("AttachLeaf would break E_i-connectivity");
      }
      break;
    }
    case ExtensionKind::SplitFlag: {
      if (step.anchors.size() != 2) throw GraphError("SplitFlag takes exactly two anchors");
      VertexId x = step.anchors[0], z = step.anchors[1];
      if (g.level(x) > g.level(z)) std::swap(x, z);
      if (g.level(x) != l - 1 || g.level(z) != l + 1) throw GraphError("SplitFlag anchors must bound the level");
      bool flag = false;
      for (VertexId y : g.neighbours(x)) flag = flag || (g.level(y) == l && g.has_edge(y, z));
      if (!flag) throw GraphError("SplitFlag anchors do not bound a dense flag");
      break;
    }
    case ExtensionKind::SeedChamber: {
      if (variant != BuildVariant::Prime) throw GraphError("SeedChamber is only valid for the prime variant");
      if (g.size() > 1 || (g.size() == 1 && g.level(0) != 0 && g.level(0) != n))
        throw GraphError("SeedChamber needs at most one vertex on an extreme level");
      if (step.anchors.size() != g.size()) throw GraphError("SeedChamber must anchor at the existing vertex");
      if (!step.anchors.empty() && std::abs(g.level(step.anchors[0]) - l) != 1)
        throw GraphError("SeedChamber anchor is not on an adjacent level");
      break;
    }
  }
  VertexId v = g.add_vertex(l);
  for (VertexId a : step.anchors) g.add_edge(v, a);
  return v;
}

LevelGraph replay(const BuildRecipe& recipe) {
  LevelGraph g = chamber_chain(recipe.n);
  for (const auto& step : recipe.steps) apply_extension(g, step, recipe.variant);
  return g;
}

namespace {

int demand_size(const ExtensionStep& s) {
  return s.kind == ExtensionKind::SplitFlag ? 3 : static_cast<int>(s.anchors.size());
}

// Extension demands whose base contains v: leaves hanging off v and copies
// of the middle of every dense flag through v.
std::vector<ExtensionStep> demands_of(const LevelGraph& g, VertexId v, BuildVariant variant) {
  std::vector<ExtensionStep> out;
  const Level l = g.level(v);
  const int n = g.dimension();
  for (Level t : {l - 1, l + 1}) {
    if (t < 0 || t > n) continue;
    if (variant == BuildVariant::Prime && t != 0 && t != n) continue;
    out.push_back({ExtensionKind::AttachLeaf, t, {v}});
  }
  auto split = [&](VertexId x, VertexId y, VertexId z) {
    out.push_back({ExtensionKind::SplitFlag, g.level(y), {x, z}});
  };
  for (VertexId y : g.neighbours(v)) {
    if (g.level(y) == l + 1) {
      for (VertexId z : g.neighbours(y))
        if (g.level(z) == l + 2) split(v, y, z);
      for (VertexId z : g.neighbours(v))
        if (g.level(z) == l - 1) split(z, v, y);
    } else {
      for (VertexId x : g.neighbours(y))
        if (g.level(x) == l - 2) split(x, y, v);
    }
  }
  return out;
}

}  // namespace

Generated generate(int n, int budget, std::uint64_t seed, BuildVariant variant, const GenerateOptions& opts) {
  if (n < 1) throw GraphError("dimension must be >= 1");
  if (budget < n + 1) throw GraphError("budget must be at least n+1 = " + std::to_string(n + 1));
  Generated out{chamber_chain(n), BuildRecipe{n, seed, variant, {}}};
  LevelGraph& g = out.graph;
  // std::mt19937_64 is fully specified, and all draws below reduce its raw
  // output directly so that results agree across standard libraries.
  std::mt19937_64 rng(seed);
  std::deque<ExtensionStep> queue;
  auto key = [](const ExtensionStep& s) { return std::tuple(s.kind, s.level, s.anchors); };
  std::set<decltype(key(ExtensionStep{}))> pending;
  auto enqueue = [&](const ExtensionStep& s) {
    if (demand_size(s) > opts.max_demand_size) return;
    if (pending.insert(key(s)).second) queue.push_back(s);
  };
  if (variant == BuildVariant::Saturated)
    for (Level l = 0; l <= n; ++l) enqueue({ExtensionKind::AttachLeaf, l, {}});
  for (VertexId v = 0; v < g.size(); ++v)
    for (auto& s : demands_of(g, v, variant)) enqueue(s);

  std::size_t stalls = 0;
  while (static_cast<int>(g.size()) < budget) {
    ExtensionStep step;
    bool from_queue = !queue.empty() && rng() % 2 == 0;
    if (from_queue) {
      step = queue.front();
      queue.pop_front();
      pending.erase(key(step));
    } else {
      auto v = static_cast<VertexId>(rng() % g.size());
      auto options = demands_of(g, v, variant);
      if (options.empty()) {
        if (++stalls > 1000 * static_cast<std::size_t>(budget)) throw GraphError("generation stalled");
        continue;
      }
      step = options[rng() % options.size()];
    }
    VertexId v;
    try {
      v = apply_extension(g, step, variant);
    } catch (const GraphError&) {
      if (++stalls > 1000 * static_cast<std::size_t>(budget)) throw GraphError("generation stalled");
      continue;
    }
    out.recipe.steps.push_back(step);
    if (from_queue) enqueue(step);
    for (auto& s : demands_of(g, v, variant)) enqueue(s);
  }
  return out;
}

}  // namespace pseudospace
