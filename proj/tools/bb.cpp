// bb: command-line front end for the propositional abstraction library.
//
// Commands mirror the library operations: snc, wsc, abstract, verify, exact,
// cover, layer, query. Results go to stdout, either as labelled text lines or
// as one JSON object (--json). Exit codes: 0 success, 1 negative verdict from
// verify/exact, 2 usage, file or limit errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bb/bb.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  enum class Command { Snc, Wsc, Abstract, Verify, Exact, Cover, Layer, Query };

  Command command = Command::Snc;
  std::string source_path;
  std::vector<std::string> bridge_paths;
  std::vector<std::string> keep_specs;
  std::string drop_spec;
  std::string defs_path;
  std::string lower_path;
  std::string upper_path;
  std::string facts_path;
  std::string query_text;
  bool json_output = false;
  std::size_t max_atoms = bb::kDefaultAtomLimit;
};

std::vector<std::string> split_atom_list(const std::string& spec) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string atom = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!bb::valid_atom_name(atom))
      throw std::invalid_argument("invalid atom name in list: '" + atom + "'");
    out.push_back(std::move(atom));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bb::Vocabulary vocabulary_from_spec(const std::string& spec) {
  auto atoms = split_atom_list(spec);
  return bb::Vocabulary(atoms.begin(), atoms.end());
}

bb::Theory load_bridge(const RunConfig& cfg) {
  if (cfg.bridge_paths.empty()) return bb::Theory{};
  return bb::load_theory(cfg.bridge_paths.front());
}

// The abstract vocabulary: --keep verbatim, or everything in the loaded
// theories minus --drop.
bb::Vocabulary resolve_keep(const RunConfig& cfg, const bb::Theory& source, const bb::Theory& bridge) {
  if (!cfg.keep_specs.empty()) return vocabulary_from_spec(cfg.keep_specs.front());
  bb::Vocabulary drop = vocabulary_from_spec(cfg.drop_spec);
  bb::Vocabulary keep;
  for (const std::string& a : source.vocab())
    if (!drop.count(a)) keep.insert(a);
  for (const std::string& a : bridge.vocab())
    if (!drop.count(a)) keep.insert(a);
  return keep;
}

json vocab_json(const bb::Vocabulary& v) { return json(std::vector<std::string>(v.begin(), v.end())); }

json world_json(const bb::World& w) {
  json out = json::object();
  for (const auto& [atom, value] : w.assignment()) out[atom] = value;
  return out;
}

json cover_json(const bb::Cover& cover) {
  json arr = json::array();
  for (const bb::CoverElement& e : cover.elements)
    arr.push_back({{"formula", e.formula_index}, {"path", e.position.path}, {"head", e.head}});
  return arr;
}

std::string world_text(const bb::World& w) {
  std::string out;
  for (const auto& [atom, value] : w.assignment()) {
    if (!out.empty()) out += ' ';
    out += atom + '=' + (value ? "true" : "false");
  }
  return out;
}

void print_cover_text(const std::optional<bb::Cover>& cover) {
  if (!cover) {
    std::cout << "cover: none\n";
    return;
  }
  for (const bb::CoverElement& e : cover->elements) {
    std::cout << "cover: formula " << e.formula_index << " at [";
    for (std::size_t i = 0; i < e.position.path.size(); ++i) {
      if (i) std::cout << ' ';
      std::cout << e.position.path[i];
    }
    std::cout << "] matches " << e.head << "\n";
  }
}

void emit(const json& obj, bool json_mode) {
  if (json_mode) std::cout << obj.dump(2) << "\n";
}

int run_projection(const RunConfig& cfg) {
  bb::Theory source = bb::load_theory(cfg.source_path);
  bb::Theory bridge = load_bridge(cfg);
  bb::Vocabulary keep = resolve_keep(cfg, source, bridge);
  const bool is_snc = cfg.command == RunConfig::Command::Snc;
  bb::Formula result = is_snc ? bb::snc(source, bridge, keep, cfg.max_atoms)
                              : bb::wsc(source, bridge, keep, cfg.max_atoms);
  if (cfg.json_output) {
    json out{{"command", is_snc ? "snc" : "wsc"},
             {"inputs",
              {{"source", cfg.source_path},
               {"bridge", cfg.bridge_paths},
               {"keep", vocab_json(keep)}}}};
    out[is_snc ? "upper" : "lower"] = bb::render_pretty(result);
    emit(out, true);
  } else {
    std::cout << bb::render_pretty(result) << "\n";
  }
  return 0;
}

int run_abstract(const RunConfig& cfg) {
  bb::Theory source = bb::load_theory(cfg.source_path);
  bb::Theory bridge = load_bridge(cfg);
  bb::Vocabulary keep = resolve_keep(cfg, source, bridge);
  std::optional<bb::DefinitionSet> defs;
  if (!cfg.defs_path.empty()) defs = bb::load_definitions(cfg.defs_path);

  bb::AbstractionOutcome out = bb::abstract_with_exactness(source, bridge, keep, defs, cfg.max_atoms);
  const std::string lower = bb::render_pretty(out.abstraction.lower.as_formula());
  const std::string upper = bb::render_pretty(out.abstraction.upper.as_formula());

  if (cfg.json_output) {
    json obj{{"command", "abstract"},
             {"inputs",
              {{"source", cfg.source_path},
               {"bridge", cfg.bridge_paths},
               {"keep", vocab_json(keep)}}},
             {"lower", lower},
             {"upper", upper},
             {"exact", out.exact}};
    if (!cfg.defs_path.empty()) {
      obj["inputs"]["defs"] = cfg.defs_path;
      obj["cover"] = out.cover ? cover_json(*out.cover) : json(nullptr);
    }
    emit(obj, true);
  } else {
    std::cout << "lower: " << lower << "\n";
    std::cout << "upper: " << upper << "\n";
    std::cout << "exact: " << (out.exact ? "true" : "false") << "\n";
    if (!cfg.defs_path.empty()) print_cover_text(out.cover);
  }
  return 0;
}

int run_verify(const RunConfig& cfg) {
  bb::Theory source = bb::load_theory(cfg.source_path);
  bb::Theory bridge = load_bridge(cfg);
  bb::Theory lower = bb::load_theory(cfg.lower_path);
  bb::Theory upper = bb::load_theory(cfg.upper_path);

  bb::Vocabulary keep;
  if (!cfg.keep_specs.empty()) {
    keep = vocabulary_from_spec(cfg.keep_specs.front());
  } else {
    keep = lower.vocab();
    for (const std::string& a : upper.vocab()) keep.insert(a);
  }

  bb::AlphaAbstraction candidate{lower, upper, keep};
  bb::VerifyReport report = bb::verify(source, bridge, candidate, cfg.max_atoms);

  if (cfg.json_output) {
    json obj{{"command", "verify"},
             {"inputs",
              {{"source", cfg.source_path},
               {"bridge", cfg.bridge_paths},
               {"lower", cfg.lower_path},
               {"upper", cfg.upper_path},
               {"keep", vocab_json(keep)}}},
             {"lower", bb::render_pretty(lower.as_formula())},
             {"upper", bb::render_pretty(upper.as_formula())},
             {"lower_ok", report.lower_ok},
             {"upper_ok", report.upper_ok},
             {"exact", report.exact}};
    if (report.counterexample) obj["counterexample"] = world_json(*report.counterexample);
    emit(obj, true);
  } else {
    std::cout << "lower_ok: " << (report.lower_ok ? "true" : "false") << "\n";
    std::cout << "upper_ok: " << (report.upper_ok ? "true" : "false") << "\n";
    std::cout << "exact: " << (report.exact ? "true" : "false") << "\n";
    if (report.counterexample)
      std::cout << "counterexample: " << world_text(*report.counterexample) << "\n";
  }
  return report.lower_ok && report.upper_ok ? 0 : 1;
}

int run_exact(const RunConfig& cfg) {
  bb::Theory bridge = load_bridge(cfg);
  bb::Theory lower = bb::load_theory(cfg.lower_path);
  bb::Theory upper = bb::load_theory(cfg.upper_path);
  bb::Vocabulary keep = lower.vocab();
  for (const std::string& a : upper.vocab()) keep.insert(a);
  if (!cfg.keep_specs.empty()) keep = vocabulary_from_spec(cfg.keep_specs.front());

  bool exact = bb::is_exact(bb::AlphaAbstraction{lower, upper, keep}, bridge, cfg.max_atoms);
  if (cfg.json_output) {
    emit(json{{"command", "exact"},
              {"inputs",
               {{"bridge", cfg.bridge_paths},
                {"lower", cfg.lower_path},
                {"upper", cfg.upper_path}}},
              {"lower", bb::render_pretty(lower.as_formula())},
              {"upper", bb::render_pretty(upper.as_formula())},
              {"exact", exact}},
         true);
  } else {
    std::cout << "exact: " << (exact ? "true" : "false") << "\n";
  }
  return exact ? 0 : 1;
}

int run_cover(const RunConfig& cfg) {
  bb::Theory source = bb::load_theory(cfg.source_path);
  bb::DefinitionSet defs = bb::load_definitions(cfg.defs_path);

  bb::Vocabulary drop;
  if (!cfg.drop_spec.empty()) {
    drop = vocabulary_from_spec(cfg.drop_spec);
  } else {
    bb::Vocabulary keep = vocabulary_from_spec(cfg.keep_specs.front());
    for (const std::string& a : source.vocab())
      if (!keep.count(a)) drop.insert(a);
  }

  std::optional<bb::Cover> cover =
      bb::find_proper_cover(source, defs, drop, bb::kDefaultCoverBudget, cfg.max_atoms);
  if (cfg.json_output) {
    json obj{{"command", "cover"},
             {"inputs",
              {{"source", cfg.source_path},
               {"defs", cfg.defs_path},
               {"drop", vocab_json(drop)}}},
             {"cover", cover ? cover_json(*cover) : json(nullptr)}};
    emit(obj, true);
  } else {
    print_cover_text(cover);
  }
  return 0;
}

int run_layer(const RunConfig& cfg) {
  bb::Theory source = bb::load_theory(cfg.source_path);
  if (cfg.bridge_paths.size() != cfg.keep_specs.size())
    throw std::invalid_argument("layer needs one --keep list per -b bridge");

  std::vector<bb::Stage> stages;
  for (std::size_t i = 0; i < cfg.bridge_paths.size(); ++i)
    stages.push_back({bb::load_theory(cfg.bridge_paths[i]), vocabulary_from_spec(cfg.keep_specs[i])});

  bb::AlphaAbstraction result = bb::compose(bb::as_bounds(source), stages, cfg.max_atoms);
  const std::string lower = bb::render_pretty(result.lower.as_formula());
  const std::string upper = bb::render_pretty(result.upper.as_formula());

  if (cfg.json_output) {
    json keeps = json::array();
    for (const std::string& spec : cfg.keep_specs) keeps.push_back(vocab_json(vocabulary_from_spec(spec)));
    emit(json{{"command", "layer"},
              {"inputs", {{"source", cfg.source_path}, {"bridge", cfg.bridge_paths}, {"keep", keeps}}},
              {"lower", lower},
              {"upper", upper}},
         true);
  } else {
    std::cout << "lower: " << lower << "\n";
    std::cout << "upper: " << upper << "\n";
  }
  return 0;
}

int run_query(const RunConfig& cfg) {
  bb::FactBase facts = bb::load_facts(cfg.facts_path);
  bb::Formula q = bb::parse(cfg.query_text);
  bool value = bb::query(facts, q);
  if (cfg.json_output) {
    emit(json{{"command", "query"},
              {"inputs", {{"facts", cfg.facts_path}, {"query", cfg.query_text}}},
              {"result", value}},
         true);
  } else {
    std::cout << (value ? "true" : "false") << "\n";
  }
  return 0;
}

int run(const RunConfig& cfg) {
  switch (cfg.command) {
    case RunConfig::Command::Snc:
    case RunConfig::Command::Wsc:
      return run_projection(cfg);
    case RunConfig::Command::Abstract:
      return run_abstract(cfg);
    case RunConfig::Command::Verify:
      return run_verify(cfg);
    case RunConfig::Command::Exact:
      return run_exact(cfg);
    case RunConfig::Command::Cover:
      return run_cover(cfg);
    case RunConfig::Command::Layer:
      return run_layer(cfg);
    default:
      return run_query(cfg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bb: approximate abstractions of propositional theories"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_max_atoms = [&](CLI::App* sub) {
    sub->add_option("--max-atoms", cfg.max_atoms, "Enumeration limit on distinct atoms")
        ->envname("BB_MAX_ATOMS");
    sub->add_flag("--json", cfg.json_output, "Emit one JSON object instead of text");
  };
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("-s,--source", cfg.source_path, "Source theory file (.bbt)")->required();
  };
  auto add_bridge = [&](CLI::App* sub, bool repeatable) {
    auto* opt = sub->add_option("-b,--bridge", cfg.bridge_paths, "Bridging theory file (.bbt)");
    if (!repeatable) opt->expected(0, 1);
  };
  auto add_keep_drop = [&](CLI::App* sub, bool required) {
    auto* keep = sub->add_option("--keep", cfg.keep_specs, "Comma-separated atoms to keep")
                     ->expected(0, 1);
    auto* drop = sub->add_option("--drop", cfg.drop_spec, "Comma-separated atoms to eliminate");
    keep->excludes(drop);
    if (required) {
      // one of the two must be present; checked after parsing
      sub->parse_complete_callback([&, sub]() {
        if (cfg.keep_specs.empty() && cfg.drop_spec.empty())
          throw CLI::RequiredError(sub->get_name() + " requires --keep or --drop");
      });
    }
  };

  CLI::App* snc_cmd = app.add_subcommand("snc", "Strongest necessary condition over kept atoms");
  add_source(snc_cmd);
  add_bridge(snc_cmd, false);
  add_keep_drop(snc_cmd, true);
  add_max_atoms(snc_cmd);
  snc_cmd->callback([&]() { cfg.command = RunConfig::Command::Snc; });

  CLI::App* wsc_cmd = app.add_subcommand("wsc", "Weakest sufficient condition over kept atoms");
  add_source(wsc_cmd);
  add_bridge(wsc_cmd, false);
  add_keep_drop(wsc_cmd, true);
  add_max_atoms(wsc_cmd);
  wsc_cmd->callback([&]() { cfg.command = RunConfig::Command::Wsc; });

  CLI::App* abstract_cmd = app.add_subcommand("abstract", "Tightest abstraction with exactness check");
  add_source(abstract_cmd);
  add_bridge(abstract_cmd, false);
  add_keep_drop(abstract_cmd, true);
  abstract_cmd->add_option("--defs", cfg.defs_path, "Definitions file (head := formula per line)");
  add_max_atoms(abstract_cmd);
  abstract_cmd->callback([&]() { cfg.command = RunConfig::Command::Abstract; });

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a candidate pair of bounds");
  add_source(verify_cmd);
  add_bridge(verify_cmd, false);
  verify_cmd->add_option("--lower", cfg.lower_path, "Candidate lower bound file")->required();
  verify_cmd->add_option("--upper", cfg.upper_path, "Candidate upper bound file")->required();
  verify_cmd->add_option("--keep", cfg.keep_specs, "Abstract vocabulary (defaults to the bounds')")
      ->expected(0, 1);
  add_max_atoms(verify_cmd);
  verify_cmd->callback([&]() { cfg.command = RunConfig::Command::Verify; });

  CLI::App* exact_cmd = app.add_subcommand("exact", "Check bound equivalence under the bridge");
  add_bridge(exact_cmd, false);
  exact_cmd->add_option("--lower", cfg.lower_path, "Lower bound file")->required();
  exact_cmd->add_option("--upper", cfg.upper_path, "Upper bound file")->required();
  exact_cmd->add_option("--keep", cfg.keep_specs, "Abstract vocabulary (defaults to the bounds')")
      ->expected(0, 1);
  add_max_atoms(exact_cmd);
  exact_cmd->callback([&]() { cfg.command = RunConfig::Command::Exact; });

  CLI::App* cover_cmd = app.add_subcommand("cover", "Find a proper cover for definitions");
  add_source(cover_cmd);
  cover_cmd->add_option("--defs", cfg.defs_path, "Definitions file")->required();
  add_keep_drop(cover_cmd, true);
  add_max_atoms(cover_cmd);
  cover_cmd->callback([&]() { cfg.command = RunConfig::Command::Cover; });

  CLI::App* layer_cmd = app.add_subcommand("layer", "Fold staged abstractions over the source");
  add_source(layer_cmd);
  layer_cmd->add_option("-b,--bridge", cfg.bridge_paths, "Bridge file per stage (repeatable)")
      ->required();
  layer_cmd->add_option("--keep", cfg.keep_specs, "Kept atoms per stage (repeatable)")
      ->required();
  add_max_atoms(layer_cmd);
  layer_cmd->callback([&]() { cfg.command = RunConfig::Command::Layer; });

  CLI::App* query_cmd = app.add_subcommand("query", "Evaluate a closed-world query over facts");
  query_cmd->add_option("-f,--facts", cfg.facts_path, "Fact-base file")->required();
  query_cmd->add_option("-q,--query", cfg.query_text, "Query formula")->required();
  add_max_atoms(query_cmd);
  query_cmd->callback([&]() { cfg.command = RunConfig::Command::Query; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
