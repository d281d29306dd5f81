#pragma once

#include <optional>
#include <vector>

#include "pseudospace/closure.hpp"
#include "pseudospace/level_graph.hpp"
#include "pseudospace/report.hpp"

namespace pseudospace {

enum class AmpleVariant { Pillay, Evans };

const char* to_string(AmpleVariant v);

/// Tuples a_0..a_m over the parameter set.
struct AmpleInstance {
  std::vector<std::vector<VertexId>> tuples;
  std::vector<VertexId> params;
  AmpleVariant variant = AmpleVariant::Pillay;
};

/// Throws GraphError for fewer than two tuples, std::out_of_range for unknown
/// vertices.
void validate(const LevelGraph& g, const AmpleInstance& inst);

/// Condition k of the report is condition k of the definition; condition 3
/// is the variant's independence ladder. Each failing condition is reported
/// once, at its first failing index.
ClassReport verify_witness(const Closure& cl, const AmpleInstance& inst);
ClassReport verify_witness(const LevelGraph& g, const AmpleInstance& inst);

/// The first chamber as singleton tuples, Evans variant, no parameters.
/// Throws GraphError when g has no chamber.
AmpleInstance flag_witness(const LevelGraph& g);

struct FlagExtraction {
  enum class Status { Found, NotFound, NotWitness };
  Status status = Status::NotFound;
  /// b_0..b_n with b_i in acl(a_i A).
  std::vector<VertexId> flag;
  /// The failed witness check for NotWitness.
  ClassReport precondition;
};

FlagExtraction extract_flag(const Closure& cl, const AmpleInstance& inst);
FlagExtraction extract_flag(const LevelGraph& g, const AmpleInstance& inst);

}  // namespace pseudospace
