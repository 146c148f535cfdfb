#include "ndmu/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ndmu/bisim.hpp"
#include "ndmu/evalgame.hpp"
#include "ndmu/formula.hpp"
#include "ndmu/polarity.hpp"
#include "ndmu/random.hpp"
#include "ndmu/scenarios.hpp"
#include "ndmu/semantics.hpp"
#include "ndmu/unfolding.hpp"

namespace ndmu {
namespace {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json concept_to_json(const ConceptLattice& lattice, ConceptId id) {
  const Polarity& p = lattice.polarity();
  const Concept& c = lattice[id];
  json extent = json::array();
  json intent = json::array();
  for (int g : c.extent) extent.push_back(p.object_name(g));
  for (int m : c.intent) intent.push_back(p.attribute_name(m));
  return json{{"extent", extent}, {"intent", intent}};
}

std::string concept_to_text(const ConceptLattice& lattice, ConceptId id) {
  return lattice.to_string(id);
}

// Shared per-subcommand option state.
struct CommonOpts {
  std::string format = "text";
  bool json_output() const { return format == "json"; }
};

struct ParseOpts : CommonOpts {
  std::string formula;
  std::string file;
};

struct LatticeOpts : CommonOpts {
  std::string model;
};

struct EvalOpts : CommonOpts {
  std::string model;
  std::string formula;
};

struct CheckOpts : CommonOpts {
  std::string model;
  std::string formula;
  int random_runs = 0;
  unsigned long long seed = 0;
  bool seed_given = false;
};

struct GameOpts : CommonOpts {
  std::string model;
  std::string formula;
  std::string start;
  std::string side = "auto";
  std::string emit_game;
};

struct UnfoldOpts : CommonOpts {
  std::string model;
  std::string map_text;
  std::string var_name = "c";
  std::string generators = "join";
  std::string variant = "standard";
  std::string infinite = "forall";
  bool use_explicit_board = false;
  int max_generators = 12;
  std::string emit_game;
};

struct BisimOpts : CommonOpts {
  std::string model1;
  std::string model2;
  std::string pair_file;
  bool do_check = false;
  bool do_largest = false;
  std::string invariance_formula;
  std::vector<std::string> bisim_pair;
  bool attributes = false;
};

struct ScenarioOpts : CommonOpts {
  std::string model;
  std::string which;
};

FormulaPtr parse_ready(const std::string& text) { return rename_apart(parse_formula(text)); }

int cmd_parse(const ParseOpts& o, std::ostream& out) {
  std::string text = o.formula;
  if (!o.file.empty()) text = read_text_file(o.file);
  FormulaPtr f = parse_formula(text);
  if (o.json_output()) {
    json doc;
    doc["formula"] = print_formula(f);
    doc["hygienic"] = is_hygienic(*f);
    json atoms = json::array();
    for (const auto& a : atom_names(*f)) atoms.push_back(a);
    doc["atoms"] = atoms;
    json unbound = json::array();
    for (const auto& v : unbound_variables(*f)) unbound.push_back(v);
    doc["unbound_variables"] = unbound;
    out << doc.dump(2) << "\n";
  } else {
    out << print_formula(f) << "\n";
    if (!is_hygienic(*f)) out << "note: not hygienic, binders reuse names\n";
    auto unbound = unbound_variables(*f);
    if (!unbound.empty()) {
      out << "unbound:";
      for (const auto& v : unbound) out << " " << v;
      out << "\n";
    }
  }
  return 0;
}

int cmd_lattice(const LatticeOpts& o, std::ostream& out) {
  // Lattice construction does not need the modal relations to be compatible.
  Model model = load_model(o.model, false);
  const ConceptLattice& lat = model.lattice;
  auto violations = check_compatible(model.ctx);
  if (o.json_output()) {
    json doc;
    doc["size"] = lat.size();
    json cs = json::array();
    for (ConceptId id = 0; id < lat.size(); ++id) cs.push_back(concept_to_json(lat, id));
    doc["concepts"] = cs;
    doc["compatible"] = violations.empty();
    json vs = json::array();
    for (const auto& v : violations) vs.push_back(v.describe());
    doc["violations"] = vs;
    out << doc.dump(2) << "\n";
  } else {
    out << lat.size() << " concepts\n";
    for (ConceptId id = 0; id < lat.size(); ++id) out << "  " << concept_to_text(lat, id) << "\n";
    if (violations.empty()) {
      out << "relations compatible\n";
    } else {
      out << "relations NOT compatible:\n";
      for (const auto& v : violations) out << "  " << v.describe() << "\n";
    }
  }
  return 0;
}

int cmd_eval(const EvalOpts& o, std::ostream& out) {
  Model model = load_model(o.model);
  FormulaPtr f = parse_ready(o.formula);
  ConceptId value = evaluate(model, f);
  const Concept& c = model.lattice[value];
  if (o.json_output()) {
    json doc;
    doc["formula"] = print_formula(f);
    doc["value"] = concept_to_json(model.lattice, value);
    json forcing = json::array();
    for (int g : c.extent) forcing.push_back(model.ctx.polarity.object_name(g));
    json coforcing = json::array();
    for (int m : c.intent) coforcing.push_back(model.ctx.polarity.attribute_name(m));
    doc["forcing_objects"] = forcing;
    doc["coforcing_attributes"] = coforcing;
    out << doc.dump(2) << "\n";
  } else {
    out << print_formula(f) << " = " << concept_to_text(model.lattice, value) << "\n";
  }
  return 0;
}

struct CheckRow {
  std::string name;
  bool attribute_side = false;
  bool denotational = false;  // forces (objects) / coforces (attributes)
  Player game_winner = Player::Exists;
  bool agree = false;
};

std::vector<CheckRow> run_check(const Model& model, const FormulaPtr& f) {
  EvalGame game = build_eval_game(model, f);
  Solution sol = solve_parity(game.board);
  ConceptId value = evaluate(model, f);
  const Concept& c = model.lattice[value];
  const Polarity& p = model.ctx.polarity;
  std::vector<CheckRow> rows;
  for (int g = 0; g < p.object_count(); ++g) {
    CheckRow row;
    row.name = p.object_name(g);
    row.attribute_side = false;
    row.denotational = c.extent.contains(g);
    row.game_winner = sol.winner[game.object_start[g]];
    row.agree = row.denotational == (row.game_winner == Player::Exists);
    rows.push_back(row);
  }
  for (int m = 0; m < p.attribute_count(); ++m) {
    CheckRow row;
    row.name = p.attribute_name(m);
    row.attribute_side = true;
    row.denotational = c.intent.contains(m);
    // Adequacy on the attribute side: Exists wins exactly when m does NOT co-force.
    row.game_winner = sol.winner[game.attribute_start[m]];
    row.agree = row.denotational == (row.game_winner == Player::Forall);
    rows.push_back(row);
  }
  return rows;
}

int cmd_check(const CheckOpts& o, std::ostream& out) {
  if (o.random_runs > 0) {
    if (!o.model.empty() || !o.formula.empty())
      throw CLI::ValidationError("check", "--random replaces the model/formula arguments");
    unsigned long long seed = o.seed;
    if (!o.seed_given) seed = std::random_device{}();
    std::mt19937_64 rng(seed);
    json mismatches = json::array();
    int done = 0;
    for (int run = 0; run < o.random_runs; ++run) {
      Model model = random_model(rng);
      std::vector<std::string> atoms;
      for (const auto& [name, value] : model.valuation) atoms.push_back(name);
      FormulaPtr f = random_formula(rng, atoms);
      for (const AdequacyMismatch& mm : adequacy_check(model, f)) {
        const Polarity& p = model.ctx.polarity;
        json item;
        item["run"] = run;
        item["formula"] = print_formula(f);
        item["element"] =
            mm.attribute_side ? p.attribute_name(mm.element) : p.object_name(mm.element);
        item["denotational"] = mm.denotational;
        item["game"] = player_name(mm.game_winner);
        mismatches.push_back(item);
      }
      ++done;
    }
    if (o.json_output()) {
      json doc;
      doc["seed"] = seed;
      doc["runs"] = done;
      doc["mismatches"] = mismatches;
      out << doc.dump(2) << "\n";
    } else {
      out << "seed " << seed << ": " << done << " runs, " << mismatches.size()
          << " mismatches\n";
      for (const auto& m : mismatches)
        out << "  run " << m["run"] << " " << m["formula"].get<std::string>() << "\n";
    }
    return mismatches.empty() ? 0 : 1;
  }

  if (o.model.empty() || o.formula.empty())
    throw CLI::RequiredError("check needs MODEL and FORMULA (or --random N)");
  Model model = load_model(o.model);
  FormulaPtr f = parse_ready(o.formula);
  std::vector<CheckRow> rows = run_check(model, f);
  bool all_agree = true;
  for (const auto& r : rows) all_agree = all_agree && r.agree;
  if (o.json_output()) {
    json doc;
    doc["formula"] = print_formula(f);
    json items = json::array();
    for (const auto& r : rows) {
      json item;
      item["name"] = r.name;
      item["kind"] = r.attribute_side ? "attribute" : "object";
      item["denotational"] = r.denotational;
      item["game"] = player_name(r.game_winner);
      item["agree"] = r.agree;
      items.push_back(item);
    }
    doc["elements"] = items;
    doc["agree"] = all_agree;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : rows) {
      const char* verdict = r.attribute_side ? (r.denotational ? "co-forces    " : "not co-forces")
                                             : (r.denotational ? "forces       " : "not forces   ");
      out << "  " << r.name << ": " << verdict << "  game " << player_name(r.game_winner)
          << "  " << (r.agree ? "AGREE" : "DISAGREE") << "\n";
    }
    out << (all_agree ? "result: AGREE" : "result: DISAGREE") << "\n";
  }
  return all_agree ? 0 : 1;
}

int cmd_game(const GameOpts& o, std::ostream& out) {
  Model model = load_model(o.model);
  FormulaPtr f = parse_ready(o.formula);
  const Polarity& p = model.ctx.polarity;

  int gi = p.object_index(o.start);
  int mi = p.attribute_index(o.start);
  bool attribute_side;
  if (o.side == "object") {
    if (gi < 0) throw std::runtime_error("no object named " + o.start);
    attribute_side = false;
  } else if (o.side == "attribute") {
    if (mi < 0) throw std::runtime_error("no attribute named " + o.start);
    attribute_side = true;
  } else {
    if (gi >= 0 && mi >= 0)
      throw std::runtime_error(o.start + " names both an object and an attribute, use --side");
    if (gi < 0 && mi < 0) throw std::runtime_error("no element named " + o.start);
    attribute_side = gi < 0;
  }

  int element = attribute_side ? mi : gi;
  GameVerdict verdict = game_check(model, f, attribute_side, element);

  EvalGame game = build_eval_game(model, f);
  Solution sol = solve_parity(game.board);
  if (!o.emit_game.empty()) {
    std::ofstream gout(o.emit_game);
    if (!gout) throw std::runtime_error("cannot open file: " + o.emit_game);
    json doc = board_to_json(game.board, &sol);
    doc["start"] =
        attribute_side ? game.attribute_start[mi] : game.object_start[gi];
    gout << doc.dump(2) << "\n";
  }

  if (o.json_output()) {
    json doc;
    doc["start"] = o.start;
    doc["side"] = attribute_side ? "attribute" : "object";
    doc["formula"] = print_formula(f);
    doc["winner"] = player_name(verdict.winner);
    json play = json::array();
    for (const auto& label : verdict.play) play.push_back(label);
    doc["play"] = play;
    if (verdict.repeat_index >= 0)
      doc["repeat_index"] = verdict.repeat_index;
    else
      doc["repeat_index"] = nullptr;
    out << doc.dump(2) << "\n";
  } else {
    out << "winner: " << player_name(verdict.winner) << "\n";
    out << "play:\n";
    for (std::size_t i = 0; i < verdict.play.size(); ++i)
      out << "  [" << i << "] " << verdict.play[i] << "\n";
    if (verdict.repeat_index >= 0)
      out << "  loops back to [" << verdict.repeat_index << "]\n";
  }
  return 0;
}

int cmd_unfold(const UnfoldOpts& o, std::ostream& out) {
  Model model = load_model(o.model);
  FormulaPtr body = parse_ready(o.map_text);
  LatticeMap f = formula_map(model, body, o.var_name);

  GeneratorKind kind = o.generators == "join" ? GeneratorKind::Join : GeneratorKind::Meet;
  Player infinite_winner = o.infinite == "exists" ? Player::Exists : Player::Forall;

  json doc;
  doc["generators"] = o.generators;
  doc["infinite_winner"] = player_name(infinite_winner);
  doc["map"] = print_formula(body);

  UnfoldOutcome outcome;
  if (o.variant == "gprime") {
    outcome = solve_gprime(model.lattice, f);
    doc["variant"] = "gprime";
    if (!o.emit_game.empty()) {
      UnfoldBoard ub = build_gprime_board(model.lattice, f);
      Solution sol = solve_safety(ub.board, Player::Forall);
      std::ofstream gout(o.emit_game);
      if (!gout) throw std::runtime_error("cannot open file: " + o.emit_game);
      gout << board_to_json(ub.board, &sol).dump(2) << "\n";
    }
  } else if (o.use_explicit_board) {
    UnfoldBoard ub = build_unfolding_board(model.lattice, f, kind,
                                           static_cast<std::size_t>(o.max_generators));
    outcome = solve_unfolding_board(model.lattice, ub, infinite_winner);
    doc["variant"] = "explicit";
    if (!o.emit_game.empty()) {
      Solution sol = solve_safety(ub.board, infinite_winner);
      std::ofstream gout(o.emit_game);
      if (!gout) throw std::runtime_error("cannot open file: " + o.emit_game);
      gout << board_to_json(ub.board, &sol).dump(2) << "\n";
    }
  } else {
    outcome = solve_unfolding_symbolic(model.lattice, f, kind, infinite_winner);
    doc["variant"] = "symbolic";
  }

  bool join = kind == GeneratorKind::Join;
  if (o.json_output()) {
    json ws = json::array();
    for (ConceptId c : outcome.winning) ws.push_back(concept_to_json(model.lattice, c));
    doc["winning_generators"] = ws;
    doc["fixpoint"] = concept_to_json(model.lattice, outcome.fixpoint);
    out << doc.dump(2) << "\n";
  } else {
    out << "generators: " << o.generators << ", infinite plays won by " << o.infinite;
    if (o.variant == "gprime") out << " (single-element variant, infinite plays to forall)";
    out << "\n";
    out << "winning generator positions:\n";
    if (outcome.winning.empty()) out << "  (none)\n";
    for (ConceptId c : outcome.winning)
      out << "  " << concept_to_text(model.lattice, c) << "\n";
    const char* what;
    if (o.variant == "gprime") what = "least fixed point";
    else if (join)
      what = infinite_winner == Player::Exists ? "greatest fixed point" : "least fixed point";
    else
      what = infinite_winner == Player::Forall ? "least fixed point" : "greatest fixed point";
    out << what << ": " << concept_to_text(model.lattice, outcome.fixpoint) << "\n";
  }
  return 0;
}

int cmd_bisim(const BisimOpts& o, std::ostream& out) {
  Model m1 = load_model(o.model1);
  Model m2 = load_model(o.model2);
  json doc;
  int rc = 0;

  if (o.do_check || !o.invariance_formula.empty()) {
    if (o.pair_file.empty()) throw CLI::RequiredError("--pair FILE");
  }

  if (o.do_check) {
    SimulationPair pair = load_pair_file(o.pair_file, m1, m2);
    std::vector<SimViolation> violations = check_simulation(m1, m2, pair);
    doc["mode"] = "check";
    json vs = json::array();
    for (const auto& v : violations)
      vs.push_back("condition " + std::to_string(v.condition) + ": " + v.detail);
    doc["violations"] = vs;
    doc["simulation"] = violations.empty();
    if (!o.json_output()) {
      if (violations.empty()) {
        out << "simulation: yes\n";
      } else {
        out << "simulation: no\n";
        for (const auto& v : violations)
          out << "  condition " << v.condition << ": " << v.detail << "\n";
      }
    }
    rc = violations.empty() ? 0 : 1;
  } else if (!o.invariance_formula.empty()) {
    SimulationPair pair = load_pair_file(o.pair_file, m1, m2);
    FormulaPtr f = parse_ready(o.invariance_formula);
    std::vector<InvarianceFailure> failures = invariance_test(m1, m2, pair, {f});
    doc["mode"] = "invariance";
    doc["formula"] = print_formula(f);
    json fs = json::array();
    std::vector<std::string> lines;
    for (const auto& fail : failures) {
      std::string left = fail.attribute_side ? m1.polarity().attribute_name(fail.left_element)
                                             : m1.polarity().object_name(fail.left_element);
      std::string right = fail.attribute_side ? m2.polarity().attribute_name(fail.right_element)
                                              : m2.polarity().object_name(fail.right_element);
      lines.push_back((fail.attribute_side ? "co-forcing not reflected: " : "forcing not carried: ") +
                      left + " vs " + right + " for " + fail.formula);
    }
    for (const auto& s : lines) fs.push_back(s);
    doc["failures"] = fs;
    doc["invariant"] = failures.empty();
    if (!o.json_output()) {
      out << "invariance: " << (failures.empty() ? "holds" : "fails") << "\n";
      for (const auto& s : lines) out << "  " << s << "\n";
    }
    rc = failures.empty() ? 0 : 1;
  } else if (!o.bisim_pair.empty()) {
    doc["mode"] = "bisimilar";
    bool result;
    if (o.attributes) {
      int a = m1.ctx.polarity.attribute_index(o.bisim_pair[0]);
      int b = m2.ctx.polarity.attribute_index(o.bisim_pair[1]);
      if (a < 0) throw std::runtime_error("no attribute named " + o.bisim_pair[0]);
      if (b < 0) throw std::runtime_error("no attribute named " + o.bisim_pair[1]);
      result = bisimilar_attributes(m1, m2, a, b);
    } else {
      int a = m1.ctx.polarity.object_index(o.bisim_pair[0]);
      int b = m2.ctx.polarity.object_index(o.bisim_pair[1]);
      if (a < 0) throw std::runtime_error("no object named " + o.bisim_pair[0]);
      if (b < 0) throw std::runtime_error("no object named " + o.bisim_pair[1]);
      result = bisimilar_objects(m1, m2, a, b);
    }
    doc["bisimilar"] = result;
    if (!o.json_output())
      out << o.bisim_pair[0] << " and " << o.bisim_pair[1] << ": "
          << (result ? "bisimilar" : "not bisimilar") << "\n";
    rc = result ? 0 : 1;
  } else {
    // Default: report the largest simulation from model 1 to model 2.
    SimulationPair largest = largest_simulation(m1, m2);
    doc["mode"] = "largest";
    json s = json::array();
    for (int g1 = 0; g1 < m1.ctx.polarity.object_count(); ++g1)
      for (int g2 : largest.s[g1])
        s.push_back(json::array({m1.ctx.polarity.object_name(g1),
                                 m2.ctx.polarity.object_name(g2)}));
    json t = json::array();
    for (int n1 = 0; n1 < m1.ctx.polarity.attribute_count(); ++n1)
      for (int n2 : largest.t[n1])
        t.push_back(json::array({m1.ctx.polarity.attribute_name(n1),
                                 m2.ctx.polarity.attribute_name(n2)}));
    doc["s"] = s;
    doc["t"] = t;
    if (!o.json_output()) {
      out << "largest simulation\n";
      out << "S (objects):\n";
      for (const auto& entry : s)
        out << "  " << entry[0].get<std::string>() << " -> " << entry[1].get<std::string>() << "\n";
      out << "T (attributes):\n";
      for (const auto& entry : t)
        out << "  " << entry[0].get<std::string>() << " -> " << entry[1].get<std::string>() << "\n";
    }
  }
  if (o.json_output()) out << doc.dump(2) << "\n";
  return rc;
}

int cmd_scenarios(const ScenarioOpts& o, std::ostream& out) {
  Model model = load_model(o.model);
  Scenario which = scenario_from_name(o.which);
  ScenarioReport report = run_scenario(model, which);
  if (o.json_output()) {
    json doc;
    doc["scenario"] = scenario_name(which);
    json entries = json::array();
    for (const auto& e : report.entries) {
      json item;
      item["description"] = e.description;
      item["formula"] = e.formula;
      item["result"] = concept_to_json(model.lattice, e.result);
      item["fixed_point"] = e.is_fixed_point;
      item["extremal"] = e.is_extremal;
      entries.push_back(item);
    }
    doc["entries"] = entries;
    doc["ok"] = report.ok();
    out << doc.dump(2) << "\n";
  } else {
    out << "scenario: " << scenario_name(which) << "\n";
    for (const auto& e : report.entries) {
      out << e.description << "\n";
      out << "  formula: " << e.formula << "\n";
      out << "  result:  " << concept_to_text(model.lattice, e.result) << "\n";
      out << "  fixed point: " << (e.is_fixed_point ? "yes" : "no")
          << "   extremal: " << (e.is_extremal ? "yes" : "no") << "\n";
    }
    out << (report.ok() ? "ok" : "NOT ok") << "\n";
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"concept-lattice modal mu-calculus workbench"};
  app.name("ndmu");
  app.require_subcommand(1);

  ParseOpts parse_opts;
  auto* sc_parse = app.add_subcommand("parse", "parse a formula and print it back");
  sc_parse->add_option("formula", parse_opts.formula, "formula text");
  sc_parse->add_option("--file", parse_opts.file, "read the formula from a file");
  sc_parse->add_option("--format", parse_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  LatticeOpts lattice_opts;
  auto* sc_lattice = app.add_subcommand("lattice", "build and print the concept lattice");
  sc_lattice->add_option("model", lattice_opts.model, "model file")->required();
  sc_lattice->add_option("--format", lattice_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  EvalOpts eval_opts;
  auto* sc_eval = app.add_subcommand("eval", "evaluate a formula to a concept");
  sc_eval->add_option("model", eval_opts.model, "model file")->required();
  sc_eval->add_option("formula", eval_opts.formula, "formula text")->required();
  sc_eval->add_option("--format", eval_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CheckOpts check_opts;
  auto* sc_check = app.add_subcommand(
      "check", "compare denotational and game verdicts for every element");
  sc_check->add_option("model", check_opts.model, "model file");
  sc_check->add_option("formula", check_opts.formula, "formula text");
  sc_check->add_option("--random", check_opts.random_runs,
                       "run N random model/formula comparisons instead");
  auto* seed_opt =
      sc_check->add_option("--seed", check_opts.seed, "seed for --random (default: fresh)");
  sc_check->add_option("--format", check_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  GameOpts game_opts;
  auto* sc_game = app.add_subcommand("game", "play the evaluation game from one element");
  sc_game->add_option("model", game_opts.model, "model file")->required();
  sc_game->add_option("formula", game_opts.formula, "formula text")->required();
  sc_game->add_option("--start", game_opts.start, "starting object or attribute")->required();
  sc_game->add_option("--side", game_opts.side, "object, attribute, or auto")
      ->check(CLI::IsMember({"object", "attribute", "auto"}));
  sc_game->add_option("--emit-game", game_opts.emit_game, "write the solved arena as JSON");
  sc_game->add_option("--format", game_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  UnfoldOpts unfold_opts;
  auto* sc_unfold = app.add_subcommand("unfold", "solve an unfolding game for a formula map");
  sc_unfold->add_option("model", unfold_opts.model, "model file")->required();
  sc_unfold->add_option("--map", unfold_opts.map_text, "formula body with one free variable")
      ->required();
  sc_unfold->add_option("--var", unfold_opts.var_name, "name of the free variable (default c)");
  sc_unfold->add_option("--generators", unfold_opts.generators, "join or meet")
      ->check(CLI::IsMember({"join", "meet"}));
  sc_unfold->add_option("--variant", unfold_opts.variant, "standard or gprime")
      ->check(CLI::IsMember({"standard", "gprime"}));
  sc_unfold->add_option("--infinite-winner", unfold_opts.infinite,
                        "who wins infinite plays: exists or forall")
      ->check(CLI::IsMember({"exists", "forall"}));
  sc_unfold->add_flag("--explicit", unfold_opts.use_explicit_board,
                      "solve on the explicit subset board instead of symbolically");
  sc_unfold->add_option("--max-generators", unfold_opts.max_generators,
                        "explicit board size guard");
  sc_unfold->add_option("--emit-game", unfold_opts.emit_game, "write the solved arena as JSON");
  sc_unfold->add_option("--format", unfold_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  BisimOpts bisim_opts;
  auto* sc_bisim = app.add_subcommand("bisim", "simulations between two models");
  sc_bisim->add_option("model1", bisim_opts.model1, "first model file")->required();
  sc_bisim->add_option("model2", bisim_opts.model2, "second model file")->required();
  sc_bisim->add_option("--pair", bisim_opts.pair_file, "candidate simulation pair file");
  sc_bisim->add_flag("--check", bisim_opts.do_check, "check the --pair candidate");
  sc_bisim->add_flag("--largest", bisim_opts.do_largest, "print the largest simulation");
  sc_bisim->add_option("--invariance", bisim_opts.invariance_formula,
                       "test forcing transfer along the --pair simulation for a formula");
  sc_bisim->add_option("--bisimilar", bisim_opts.bisim_pair, "two element names to compare")
      ->expected(2);
  sc_bisim->add_flag("--attributes", bisim_opts.attributes,
                     "--bisimilar names refer to attributes");
  sc_bisim->add_option("--format", bisim_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  ScenarioOpts scenario_opts;
  auto* sc_scenarios = app.add_subcommand("scenarios", "run a built-in reasoning scenario");
  sc_scenarios->add_option("model", scenario_opts.model, "model file")->required();
  sc_scenarios->add_option("--which", scenario_opts.which, "scenario name")
      ->required()
      ->check(CLI::IsMember({"coalition-expand", "coalition-sharpen", "rough", "community"}));
  sc_scenarios->add_option("--format", scenario_opts.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  check_opts.seed_given = seed_opt->count() > 0;

  try {
    if (sc_parse->parsed()) return cmd_parse(parse_opts, out);
    if (sc_lattice->parsed()) return cmd_lattice(lattice_opts, out);
    if (sc_eval->parsed()) return cmd_eval(eval_opts, out);
    if (sc_check->parsed()) return cmd_check(check_opts, out);
    if (sc_game->parsed()) return cmd_game(game_opts, out);
    if (sc_unfold->parsed()) return cmd_unfold(unfold_opts, out);
    if (sc_bisim->parsed()) return cmd_bisim(bisim_opts, out);
    if (sc_scenarios->parsed()) return cmd_scenarios(scenario_opts, out);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const IncompatibleContext& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ndmu
