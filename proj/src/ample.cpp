#include "pseudospace/ample.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "pseudospace/building.hpp"
#include "pseudospace/geometry.hpp"

namespace pseudospace {

namespace {

// Union of tuples [from, to) with the parameters.
VertexSet span(const AmpleInstance& inst, std::size_t from, std::size_t to) {
  VertexSet out(inst.params.begin(), inst.params.end());
  for (std::size_t i = from; i < to; ++i) out.insert(inst.tuples[i].begin(), inst.tuples[i].end());
  return out;
}

VertexSet with(VertexSet base, const std::vector<VertexId>& tuple) {
  base.insert(tuple.begin(), tuple.end());
  return base;
}

std::vector<VertexId> as_vector(const VertexSet& s) { return {s.begin(), s.end()}; }

}  // namespace

const char* to_string(AmpleVariant v) { return v == AmpleVariant::Evans ? "evans" : "pillay"; }

void validate(const LevelGraph& g, const AmpleInstance& inst) {
  if (inst.tuples.size() < 2) throw GraphError("an ampleness instance needs at least two tuples");
  for (const auto& t : inst.tuples)
    for (VertexId v : t) g.level(v);
  for (VertexId v : inst.params) g.level(v);
}

ClassReport verify_witness(const Closure& cl, const AmpleInstance& inst) {
  validate(cl.graph(), inst);
  const std::size_t m = inst.tuples.size() - 1;
  const auto& last = inst.tuples[m];
  ClassReport report;

  for (std::size_t i = 0; i < m; ++i) {
    const VertexSet prefix = span(inst, 0, i);
    const VertexSet lhs = cl.acl(with(prefix, inst.tuples[i]));
    const VertexSet rhs = cl.acl(with(prefix, inst.tuples[i + 1]));
    const VertexSet base = cl.acl(prefix);
    VertexSet meet;
    std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::inserter(meet, meet.end()));
    if (meet == base) continue;
    std::vector<VertexId> diff;
    std::set_symmetric_difference(meet.begin(), meet.end(), base.begin(), base.end(), std::back_inserter(diff));
    report.violations.push_back({1, diff, "closure intersection differs at i=" + std::to_string(i)});
    break;
  }

  const VertexSet params(inst.params.begin(), inst.params.end());
  if (cl.independent(with(params, last), with(params, inst.tuples[0]), params))
    report.violations.push_back({2, as_vector(with(with({}, last), inst.tuples[0])),
                                 "last tuple independent from the first"});

  for (std::size_t i = 0; i < m; ++i) {
    bool ok;
    if (inst.variant == AmpleVariant::Pillay)
      ok = cl.independent(with(params, last), span(inst, 0, i + 1), with(params, inst.tuples[i]));
    else
      ok = cl.independent(span(inst, i + 1, m + 1), span(inst, 0, i), with(params, inst.tuples[i]));
    if (ok) continue;
    report.violations.push_back({3, inst.tuples[i], "independence fails at i=" + std::to_string(i)});
    break;
  }
  report.stats["tuples"] = static_cast<double>(inst.tuples.size());
  return report;
}

ClassReport verify_witness(const LevelGraph& g, const AmpleInstance& inst) {
  return verify_witness(Closure(g), inst);
}

AmpleInstance flag_witness(const LevelGraph& g) {
  auto c = first_chamber(g);
  if (!c) throw GraphError("graph has no chamber");
  AmpleInstance out;
  out.variant = AmpleVariant::Evans;
  for (VertexId v : *c) out.tuples.push_back({v});
  return out;
}

FlagExtraction extract_flag(const Closure& cl, const AmpleInstance& inst) {
  const auto& g = cl.graph();
  FlagExtraction out;
  validate(g, inst);
  if (static_cast<int>(inst.tuples.size()) != g.dimension() + 1) {
    out.status = FlagExtraction::Status::NotWitness;
    out.precondition.violations.push_back(
        {0, {}, "expected " + std::to_string(g.dimension() + 1) + " tuples, got " + std::to_string(inst.tuples.size())});
    return out;
  }
  out.precondition = verify_witness(cl, inst);
  if (!out.precondition.verdict()) {
    out.status = FlagExtraction::Status::NotWitness;
    return out;
  }

  const VertexSet params(inst.params.begin(), inst.params.end());
  std::vector<std::vector<VertexId>> candidates;
  for (const auto& t : inst.tuples) candidates.push_back(as_vector(cl.acl(with(params, t))));
  const IncidenceIndex& index = cl.index();

  std::vector<VertexId> chosen;
  std::function<bool()> search = [&]() {
    if (chosen.size() == candidates.size()) return true;
    for (VertexId b : candidates[chosen.size()]) {
      bool fits = true;
      for (VertexId c : chosen) fits = fits && c != b && index.incident(b, c);
      if (!fits) continue;
      chosen.push_back(b);
      if (search()) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (search()) {
    out.status = FlagExtraction::Status::Found;
    out.flag = chosen;
  }
  return out;
}

FlagExtraction extract_flag(const LevelGraph& g, const AmpleInstance& inst) { return extract_flag(Closure(g), inst); }

}  // namespace pseudospace
