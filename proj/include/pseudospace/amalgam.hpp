#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pseudospace/geometry.hpp"
#include "pseudospace/report.hpp"

namespace pseudospace {

enum class ClassVariant {
  Kn,
  KnPrime,
  /// Conditions 4 and 5 with the replacement path confined to the single band
  /// next to b and b'. Not closed under strong extensions for n >= 3.
  KnSingleBand,
  /// Conditions 4 and 5 in their band-path formulation, for cross-checking.
  KnBandPaths,
};

enum class ExtensionKind { AttachLeaf, SplitFlag, SeedChamber };
enum class BuildVariant { Saturated, Prime };

struct ExtensionStep {
  ExtensionKind kind = ExtensionKind::AttachLeaf;
  Level level = 0;
  std::vector<VertexId> anchors;  // AttachLeaf: <= 1, SplitFlag: (x, z), SeedChamber: <= 1
  friend bool operator==(const ExtensionStep&, const ExtensionStep&) = default;
};

struct BuildRecipe {
  int n = 1;
  std::uint64_t seed = 0;
  BuildVariant variant = BuildVariant::Saturated;
  std::vector<ExtensionStep> steps;  // applied on top of the seed chamber chain
  friend bool operator==(const BuildRecipe&, const BuildRecipe&) = default;
};

struct CheckOptions {
  /// Cycle length bound for the band-path conditions and for Sigma 4.
  int cycle_bound = 10;
};

ClassReport check_class(const LevelGraph& g, ClassVariant variant = ClassVariant::Kn,
                        const CheckOptions& opts = {});

/// Whether every band V_{i-1} u V_i of `within` is connected, for i = 1..n.
bool bands_connected(const LevelGraph& g, const Mask& within);

/// Classifies v as the last step building `within` from `within \ {v}`.
std::optional<ExtensionStep> classify_last_vertex(const LevelGraph& g, const Mask& within, VertexId v);

/// `big` must equal `small` with v inserted (ids above v shifted by one).
std::optional<ExtensionStep> is_one_point_extension(const LevelGraph& small, const LevelGraph& big, VertexId v);

/// A <= g: g is reachable from A by 1-point strong extensions.
bool is_strong(const LevelGraph& g, const VertexSet& a);

struct Amalgam {
  LevelGraph graph;
  std::vector<VertexId> from_b;  // B id -> D id (identity)
  std::vector<VertexId> from_c;  // C id -> D id
};

/// B (x)_A C. `a_in_b[k]` and `a_in_c[k]` give the images of A's vertex k.
Amalgam free_amalgam(const LevelGraph& a, const LevelGraph& b, const LevelGraph& c,
                     const std::vector<VertexId>& a_in_b, const std::vector<VertexId>& a_in_c);

/// Validates `step` for `variant` and applies it; returns the new vertex.
VertexId apply_extension(LevelGraph& g, const ExtensionStep& step, BuildVariant variant);

LevelGraph replay(const BuildRecipe& recipe);

struct GenerateOptions {
  int max_demand_size = 6;
};

struct Generated {
  LevelGraph graph;
  BuildRecipe recipe;
};

/// Starts from one chamber chain and grows it to `budget` vertices.
Generated generate(int n, int budget, std::uint64_t seed, BuildVariant variant,
                   const GenerateOptions& opts = {});

/// Finitely checkable parts of the free pseudospace axioms. Condition ids
/// 1..4 correspond to Sigma 1..4.
ClassReport check_sigma(const LevelGraph& g, int cycle_bound = 10);

const char* to_string(ExtensionKind kind);
const char* to_string(BuildVariant variant);
ExtensionKind parse_extension_kind(const std::string& s);
BuildVariant parse_build_variant(const std::string& s);

}  // namespace pseudospace
