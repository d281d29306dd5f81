#include "pseudospace/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace pseudospace {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + what + "' has the wrong type");
  }
}

std::vector<VertexId> ids(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("field '") + what + "' must be an array");
  std::vector<VertexId> out;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0)
      throw ParseError(std::string("field '") + what + "' must hold vertex ids");
    out.push_back(x.get<VertexId>());
  }
  return out;
}

}  // namespace

Json to_json(const LevelGraph& g) {
  Json vs = Json::array();
  for (VertexId v = 0; v < g.size(); ++v) vs.push_back({{"id", v}, {"level", g.level(v)}});
  Json es = Json::array();
  for (auto [u, v] : g.edges()) es.push_back({u, v});
  return {{"n", g.dimension()}, {"vertices", vs}, {"edges", es}};
}

LevelGraph graph_from_json(const Json& j) {
  const int n = as<int>(field(j, "n"), "n");
  if (n < 0) throw ParseError("dimension must be non-negative");
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) throw ParseError("field 'vertices' must be an array");
  std::map<long long, Level> levels;
  for (const auto& v : vs) {
    auto id = as<long long>(field(v, "id"), "id");
    auto level = as<int>(field(v, "level"), "level");
    if (level < 0 || level > n) throw ParseError("vertex " + std::to_string(id) + " has a level outside 0..n");
    if (!levels.emplace(id, level).second) throw ParseError("duplicate vertex id " + std::to_string(id));
  }
  LevelGraph g(n);
  long long expect = 0;
  for (auto [id, level] : levels) {
    if (id != expect++) throw ParseError("vertex ids must be 0..|V|-1");
    g.add_vertex(level);
  }
  const Json& es = field(j, "edges");
  if (!es.is_array()) throw ParseError("field 'edges' must be an array");
  for (const auto& e : es) {
    auto uv = ids(e, "edges");
    if (uv.size() != 2) throw ParseError("an edge needs exactly two endpoints");
    try {
      g.add_edge(uv[0], uv[1]);
    } catch (const GraphError& err) {
      throw ParseError(err.what());
    }
  }
  return g;
}

Json to_json(const BuildRecipe& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back({{"kind", to_string(s.kind)}, {"level", s.level}, {"anchors", s.anchors}});
  return {{"n", r.n}, {"seed", r.seed}, {"variant", to_string(r.variant)}, {"steps", steps}};
}

BuildRecipe recipe_from_json(const Json& j) {
  BuildRecipe r;
  r.n = as<int>(field(j, "n"), "n");
  r.seed = as<std::uint64_t>(field(j, "seed"), "seed");
  try {
    r.variant = parse_build_variant(as<std::string>(field(j, "variant"), "variant"));
    for (const auto& s : field(j, "steps"))
      r.steps.push_back({parse_extension_kind(as<std::string>(field(s, "kind"), "kind")),
                         as<int>(field(s, "level"), "level"), ids(field(s, "anchors"), "anchors")});
  } catch (const GraphError& err) {
    throw ParseError(err.what());
  }
  return r;
}

Json to_json(const AmpleInstance& inst) {
  return {{"tuples", inst.tuples}, {"params", inst.params}, {"variant", to_string(inst.variant)}};
}

AmpleInstance instance_from_json(const Json& j) {
  AmpleInstance inst;
  const Json& ts = field(j, "tuples");
  if (!ts.is_array()) throw ParseError("field 'tuples' must be an array");
  for (const auto& t : ts) inst.tuples.push_back(ids(t, "tuples"));
  if (j.contains("params")) inst.params = ids(j["params"], "params");
  std::string variant = j.contains("variant") ? as<std::string>(j["variant"], "variant") : "pillay";
  if (variant == "pillay")
    inst.variant = AmpleVariant::Pillay;
  else if (variant == "evans")
    inst.variant = AmpleVariant::Evans;
  else
    throw ParseError("unknown ampleness variant '" + variant + "'");
  return inst;
}

Json to_json(const Gallery& gal) { return {{"chambers", gal.chambers}, {"type", gal.type.gens}}; }

Gallery gallery_from_json(const Json& j, int n) {
  Gallery gal;
  const Json& cs = field(j, "chambers");
  if (!cs.is_array()) throw ParseError("field 'chambers' must be an array");
  for (const auto& c : cs) gal.chambers.push_back(ids(c, "chambers"));
  try {
    gal.type = make_word(n, as<std::vector<int>>(field(j, "type"), "type"));
  } catch (const std::out_of_range& err) {
    throw ParseError(err.what());
  }
  return gal;
}

Json to_json(const ClassReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations) vs.push_back({{"condition", v.condition}, {"witness", v.witness}, {"detail", v.detail}});
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) {
    if (v == std::floor(v) && std::abs(v) < 1e15)
      stats[k] = static_cast<long long>(v);
    else
      stats[k] = v;
  }
  return {{"verdict", r.verdict()}, {"violations", vs}, {"warnings", r.warnings}, {"stats", stats}};
}

Json to_json(const ProjectionFlag& p) { return {{"proj", p.flag}}; }

std::string dump(const Json& j) { return j.dump() + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("malformed JSON: ") + err.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ParseError("cannot write " + path);
}

std::string to_dot(const LevelGraph& g) {
  std::ostringstream out;
  out << "graph pseudospace {\n  // dimension " << g.dimension() << "\n  rankdir=BT;\n";
  for (Level l = 0; l <= g.dimension(); ++l) {
    auto vs = g.vertices_at(l);
    if (vs.empty()) continue;
    out << "  { rank=same;";
    for (VertexId v : vs) out << " v" << v << " [label=\"" << v << "\", level=" << l << "];";
    out << " }\n";
  }
  for (auto [u, v] : g.edges()) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
  return out.str();
}

LevelGraph graph_from_dot(const std::string& text) {
  static const std::regex dim_re(R"re(// dimension (\d+))re");
  static const std::regex node_re(R"re(v(\d+) \[label="(\d+)", level=(\d+)\])re");
  static const std::regex edge_re(R"re(v(\d+) -- v(\d+))re");
  std::smatch m;
  if (!std::regex_search(text, m, dim_re)) throw ParseError("DOT text lacks the dimension comment");
  Json j{{"n", std::stoi(m[1])}, {"vertices", Json::array()}, {"edges", Json::array()}};
  for (auto it = std::sregex_iterator(text.begin(), text.end(), node_re); it != std::sregex_iterator(); ++it)
    j["vertices"].push_back({{"id", std::stoll((*it)[2])}, {"level", std::stoi((*it)[3])}});
  for (auto it = std::sregex_iterator(text.begin(), text.end(), edge_re); it != std::sregex_iterator(); ++it)
    j["edges"].push_back({std::stoll((*it)[1]), std::stoll((*it)[2])});
  return graph_from_json(j);
}

}  // namespace pseudospace
