#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pseudospace/amalgam.hpp"
#include "pseudospace/ample.hpp"
#include "pseudospace/building.hpp"
#include "pseudospace/closure.hpp"
#include "pseudospace/level_graph.hpp"
#include "pseudospace/report.hpp"

namespace pseudospace {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const LevelGraph& g);
LevelGraph graph_from_json(const Json& j);

Json to_json(const BuildRecipe& r);
BuildRecipe recipe_from_json(const Json& j);

Json to_json(const AmpleInstance& inst);
AmpleInstance instance_from_json(const Json& j);

Json to_json(const Gallery& gal);
Gallery gallery_from_json(const Json& j, int n);

Json to_json(const ClassReport& r);
Json to_json(const ProjectionFlag& p);

/// Compact single-line JSON with a trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// One `rank=same` block per non-empty level; node labels are vertex ids.
std::string to_dot(const LevelGraph& g);
/// Reads back the output of to_dot.
LevelGraph graph_from_dot(const std::string& text);

}  // namespace pseudospace
