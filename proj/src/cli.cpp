#include "pseudospace/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "pseudospace/io.hpp"

namespace pseudospace {

namespace {

// Bad arguments that CLI11 cannot see (ids, words, chamber lists).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<VertexId> parse_ids(const std::string& text) {
  std::vector<VertexId> out;
  try {
    for (int v : parse_word(text)) {
      if (v < 0) throw std::invalid_argument("negative id");
      out.push_back(static_cast<VertexId>(v));
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse vertex list '" + text + "'");
  }
  return out;
}

VertexSet parse_set(const std::string& text) {
  auto ids = parse_ids(text);
  return {ids.begin(), ids.end()};
}

std::vector<int> parse_gens(const std::string& text) {
  try {
    return parse_word(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

VertexId parse_vertex(const std::string& text) {
  auto ids = parse_ids(text);
  if (ids.size() != 1) throw UsageError("expected a single vertex id, got '" + text + "'");
  return ids.front();
}

LevelGraph load_graph(const std::string& path) { return graph_from_json(parse_json(read_file(path))); }

void warn_if_not_strong(const LevelGraph& g, std::ostream& err) {
  if (!is_strong(g, {}))
    err << "warning: the graph is not strong; closure results are relative to this finite graph only\n";
}

Json ids_json(const VertexSet& s) { return Json(std::vector<VertexId>(s.begin(), s.end())); }

std::uint64_t default_seed() {
  const char* env = std::getenv("PSEUDOSPACE_SEED");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    auto seed = std::stoull(env, &used);
    if (used == std::string(env).size()) return seed;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("PSEUDOSPACE_SEED is not an unsigned integer: '") + env + "'");
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite approximations of free pseudospaces", "pseudospace"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a strong finite approximation");
  int gen_n = 0, gen_budget = 0, max_demand = 6;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_variant = "saturated", gen_out, gen_recipe;
  gen->add_option("-n,--dimension", gen_n, "Dimension n")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--budget", gen_budget, "Number of vertices")->required();
  gen->add_option("--seed", gen_seed, "RNG seed (default: $PSEUDOSPACE_SEED or 0)");
  gen->add_option("--variant", gen_variant, "saturated or prime")->check(CLI::IsMember({"saturated", "prime"}));
  gen->add_option("--max-demand", max_demand, "Largest strong subset considered for extension demands")
      ->check(CLI::PositiveNumber);
  gen->add_option("-o,--output", gen_out, "Graph JSON path (default stdout)");
  gen->add_option("--recipe", gen_recipe, "Recipe JSON path (default next to the graph)");

  // check
  auto* check = app.add_subcommand("check", "Check class membership or the axioms");
  std::string graph_path, check_variant = "kn";
  int cycle_bound = 10;
  check->add_option("-g,--graph", graph_path, "Graph JSON")->required();
  check->add_option("--variant", check_variant, "kn, knprime, kn-single-band, kn-band-paths or sigma")
      ->check(CLI::IsMember({"kn", "knprime", "kn-single-band", "kn-band-paths", "sigma"}));
  check->add_option("--cycle-bound", cycle_bound, "Cycle length bound")->check(CLI::PositiveNumber);

  // query
  auto* query = app.add_subcommand("query", "Closure, projection, independence, type and word queries");
  query->require_subcommand(1);
  std::string set_text, vertex_text, a_text, b_text, c_text;

  auto* q_acl = query->add_subcommand("acl", "Algebraic closure of a set");
  q_acl->add_option("-g,--graph", graph_path)->required();
  q_acl->add_option("--set", set_text, "Comma-separated ids")->required();

  auto* q_proj = query->add_subcommand("proj", "Projection of a vertex onto acl(set)");
  q_proj->add_option("-g,--graph", graph_path)->required();
  q_proj->add_option("--vertex", vertex_text)->required();
  q_proj->add_option("--set", set_text)->required();

  auto* q_indep = query->add_subcommand("indep", "Whether A is independent from B over C");
  q_indep->add_option("-g,--graph", graph_path)->required();
  q_indep->add_option("--a", a_text)->required();
  q_indep->add_option("--b", b_text)->required();
  q_indep->add_option("--c", c_text, "May be empty");

  auto* q_type = query->add_subcommand("type", "Regular type class of a vertex over a set");
  q_type->add_option("-g,--graph", graph_path)->required();
  q_type->add_option("--vertex", vertex_text)->required();
  q_type->add_option("--set", set_text)->required();

  auto* q_weyl = query->add_subcommand("weyl", "Weyl distance of chambers or vertices");
  std::vector<std::string> chamber_texts;
  q_weyl->add_option("-g,--graph", graph_path)->required();
  auto* weyl_ch = q_weyl->add_option("--chambers", chamber_texts, "Two chambers, each comma-separated")->expected(2);
  auto* weyl_vx = q_weyl->add_option("--vertices", vertex_text, "Two vertices x,y");
  weyl_ch->excludes(weyl_vx);

  auto* q_word = query->add_subcommand("word", "Coxeter word calculus");
  std::optional<int> word_n;
  std::optional<std::string> nf_text, reduced_text, reverse_text, dcr_text;
  int dcr_i = 0, dcr_j = 0;
  q_word->add_option("-n,--dimension", word_n, "Dimension (default: largest letter, at least 1)");
  q_word->add_option("--nf", nf_text, "Normal form");
  q_word->add_option("--reduced", reduced_text, "Whether the word is reduced");
  q_word->add_option("--reverse", reverse_text, "Inverse element");
  auto* dcr = q_word->add_option("--dcr", dcr_text, "Shortest double coset representative");
  q_word->add_option("--i", dcr_i, "Left parabolic omits t_i")->needs(dcr);
  q_word->add_option("--j", dcr_j, "Right parabolic omits t_j")->needs(dcr);

  // verify-building
  auto* vb = app.add_subcommand("verify-building", "Check the building axioms on the chamber system");
  BuildingCheckOptions bopts;
  int gallery_bound = 8;
  std::optional<std::uint64_t> vb_seed;
  vb->add_option("-g,--graph", graph_path)->required();
  vb->add_option("--word-bound", bopts.word_bound, "Longest reduced word checked")->check(CLI::PositiveNumber);
  vb->add_option("--gallery-bound", gallery_bound, "Longest closed gallery searched")->check(CLI::PositiveNumber);
  vb->add_option("--roots", bopts.max_roots, "Sampled root chambers")->check(CLI::PositiveNumber);
  vb->add_option("--seed", vb_seed, "Sampling seed (default: $PSEUDOSPACE_SEED or 0)");

  // verify-ample
  auto* va = app.add_subcommand("verify-ample", "Check an ampleness witness");
  std::string instance_path, witness_variant = "evans";
  bool flag_witness_opt = false, extract = false;
  va->add_option("-g,--graph", graph_path)->required();
  auto* va_inst = va->add_option("-i,--instance", instance_path, "Instance JSON");
  auto* va_flag = va->add_flag("--flag-witness", flag_witness_opt, "Use the first chamber as the instance");
  va->add_option("--variant", witness_variant, "Variant for --flag-witness")
      ->check(CLI::IsMember({"pillay", "evans"}))
      ->needs(va_flag);
  va->add_flag("--extract", extract, "Also search for a flag b_i in acl(a_i)");
  va_inst->excludes(va_flag);

  // export
  auto* ex = app.add_subcommand("export", "Write the graph as DOT or JSON");
  std::string format = "dot", ex_out;
  ex->add_option("-g,--graph", graph_path)->required();
  ex->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  ex->add_option("-o,--output", ex_out, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (gen_budget < gen_n + 1) throw UsageError("budget must be at least n+1");
      GenerateOptions opts;
      opts.max_demand_size = max_demand;
      auto result = generate(gen_n, gen_budget, gen_seed.value_or(default_seed()), parse_build_variant(gen_variant), opts);
      emit(out, gen_out, dump(to_json(result.graph)));
      std::string recipe_path = gen_recipe;
      if (recipe_path.empty() && !gen_out.empty() && gen_out != "-") {
        recipe_path = gen_out;
        if (recipe_path.size() > 5 && recipe_path.ends_with(".json")) recipe_path.resize(recipe_path.size() - 5);
        recipe_path += ".recipe.json";
      }
      if (!recipe_path.empty()) emit(out, recipe_path, dump(to_json(result.recipe)));
      return kExitOk;
    }

    if (check->parsed()) {
      auto g = load_graph(graph_path);
      ClassReport r;
      if (check_variant == "sigma") {
        r = check_sigma(g, cycle_bound);
      } else {
        ClassVariant v = check_variant == "kn"               ? ClassVariant::Kn
                         : check_variant == "knprime"        ? ClassVariant::KnPrime
                         : check_variant == "kn-single-band" ? ClassVariant::KnSingleBand
                                                             : ClassVariant::KnBandPaths;
        CheckOptions opts;
        opts.cycle_bound = cycle_bound;
        r = check_class(g, v, opts);
      }
      out << dump(to_json(r));
      return r.verdict() ? kExitOk : kExitNegative;
    }

    if (query->parsed()) {
      if (q_word->parsed()) {
        std::vector<std::vector<int>> words;
        for (const auto* t : {&nf_text, &reduced_text, &reverse_text, &dcr_text})
          if (*t) words.push_back(parse_gens(**t));
        if (words.empty()) throw UsageError("query word needs --nf, --reduced, --reverse or --dcr");
        int n = 1;
        for (const auto& w : words)
          for (int x : w) n = std::max(n, x);
        if (dcr_text) n = std::max({n, dcr_i, dcr_j});
        n = word_n.value_or(n);
        auto word = [&](const std::string& text) {
          try {
            return make_word(n, parse_gens(text));
          } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
          }
        };
        Json result = Json::object();
        if (nf_text) result["nf"] = normal_form(word(*nf_text)).gens;
        if (reduced_text) result["reduced"] = is_reduced_word(word(*reduced_text));
        if (reverse_text) result["reverse"] = normal_form(reversed(word(*reverse_text))).gens;
        if (dcr_text) {
          if (dcr_i < 0 || dcr_i > n || dcr_j < 0 || dcr_j > n) throw UsageError("--i and --j must lie in 0..n");
          result["dcr"] = min_double_coset_rep(word(*dcr_text), dcr_i, dcr_j).gens;
        }
        out << dump(result);
        return kExitOk;
      }

      auto g = load_graph(graph_path);
      if (q_weyl->parsed()) {
        ChamberSystem cs(g);
        std::optional<CoxWord> w;
        if (!chamber_texts.empty()) {
          std::size_t idx[2];
          for (int k = 0; k < 2; ++k) {
            auto c = cs.find(parse_ids(chamber_texts[k]));
            if (!c) {
              err << "error: '" << chamber_texts[k] << "' is not a chamber\n";
              return kExitNegative;
            }
            idx[k] = *c;
          }
          w = cs.weyl_distance(idx[0], idx[1]);
        } else {
          auto xy = parse_ids(vertex_text);
          if (xy.size() != 2) throw UsageError("--vertices takes exactly two ids");
          w = cs.vertex_weyl_distance(xy[0], xy[1]);
        }
        if (!w) {
          err << "error: disconnected\n";
          return kExitNegative;
        }
        out << dump(Json{{"weyl", w->gens}});
        return kExitOk;
      }

      warn_if_not_strong(g, err);
      Closure cl(g);
      if (q_acl->parsed()) {
        out << dump(Json{{"acl", ids_json(cl.acl(parse_set(set_text)))}});
      } else if (q_proj->parsed()) {
        out << dump(to_json(cl.project(parse_vertex(vertex_text), parse_set(set_text))));
      } else if (q_indep->parsed()) {
        out << dump(Json{{"independent", cl.independent(parse_set(a_text), parse_set(b_text), parse_set(c_text))}});
      } else if (q_type->parsed()) {
        out << dump(Json{{"type", to_string(cl.classify_type(parse_vertex(vertex_text), parse_set(set_text)))}});
      }
      return kExitOk;
    }

    if (vb->parsed()) {
      auto g = load_graph(graph_path);
      bopts.seed = vb_seed.value_or(default_seed());
      ChamberSystem cs(g);
      ClassReport r = cs.verify(bopts);
      auto closed = cs.find_reduced_closed_gallery(gallery_bound);
      if (closed) {
        std::vector<VertexId> witness;
        for (const auto& c : closed->chambers) witness.insert(witness.end(), c.begin(), c.end());
        r.violations.push_back({3, witness, "reduced closed gallery of type " + format_word(closed->type.gens)});
      }
      r.stats["building_model"] = is_building_model(g) ? 1 : 0;
      Json j = to_json(r);
      j["gallery"] = closed ? to_json(*closed) : Json(nullptr);
      out << dump(j);
      return r.verdict() ? kExitOk : kExitNegative;
    }

    if (va->parsed()) {
      auto g = load_graph(graph_path);
      warn_if_not_strong(g, err);
      AmpleInstance inst;
      if (flag_witness_opt) {
        try {
          inst = flag_witness(g);
        } catch (const GraphError& e) {
          err << "error: " << e.what() << "\n";
          return kExitNegative;
        }
        inst.variant = witness_variant == "pillay" ? AmpleVariant::Pillay : AmpleVariant::Evans;
      } else if (!instance_path.empty()) {
        inst = instance_from_json(parse_json(read_file(instance_path)));
      } else {
        throw UsageError("verify-ample needs --instance or --flag-witness");
      }
      Closure cl(g);
      ClassReport r = verify_witness(cl, inst);
      Json j = to_json(r);
      j["instance"] = to_json(inst);
      bool ok = r.verdict();
      if (extract) {
        auto f = extract_flag(cl, inst);
        const char* status = f.status == FlagExtraction::Status::Found      ? "found"
                             : f.status == FlagExtraction::Status::NotFound ? "not_found"
                                                                             : "not_witness";
        j["extract"] = {{"status", status}, {"flag", f.flag}};
        ok = ok && f.status == FlagExtraction::Status::Found;
      }
      out << dump(j);
      return ok ? kExitOk : kExitNegative;
    }

    if (ex->parsed()) {
      auto g = load_graph(graph_path);
      emit(out, ex_out, format == "dot" ? to_dot(g) : dump(to_json(g)));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // Unknown vertices, non-chambers and similar domain failures.
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  }
  return kExitUsage;
}

}  // namespace pseudospace
