#pragma once

#include <map>
#include <string>
#include <vector>

#include "pseudospace/level_graph.hpp"

namespace pseudospace {

struct Violation {
  int condition = 0;
  std::vector<VertexId> witness;
  std::string detail;
};

/// Verdict of a class, axiom or building check. Warnings and statistics never
/// affect the verdict.
struct ClassReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
  std::map<std::string, double> stats;

  bool verdict() const { return violations.empty(); }
  bool violates(int condition) const {
    for (const auto& v : violations)
      if (v.condition == condition) return true;
    return false;
  }
};

}  // namespace pseudospace
