// Acceptance gate: one timed check per release criterion, each printing a
// single [PASS]/[FAIL] line. Exits with the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "ndmu/bisim.hpp"
#include "ndmu/evalgame.hpp"
#include "ndmu/random.hpp"
#include "ndmu/scenarios.hpp"
#include "ndmu/semantics.hpp"
#include "ndmu/unfolding.hpp"
#include "testutil.hpp"

using namespace ndmu;
using namespace ndmu::testutil;

namespace {

int failures = 0;

void criterion(const std::string& name, double budget_seconds,
               const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string problem;
  try {
    body();
  } catch (const std::exception& e) {
    problem = e.what();
  } catch (...) {
    problem = "unknown exception";
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (problem.empty() && elapsed > budget_seconds)
    problem = "exceeded the " + std::to_string(budget_seconds) + " s budget";
  if (problem.empty()) {
    std::printf("[PASS] %s (%.0f ms)\n", name.c_str(), elapsed * 1000.0);
  } else {
    std::printf("[FAIL] %s (%.0f ms): %s\n", name.c_str(), elapsed * 1000.0, problem.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

// ---- 1. worked example ----------------------------------------------------

void worked_example() {
  Model m = load_model(model_path("small.ctx"));
  const Polarity& p = m.polarity();
  FormulaPtr f = rename_apart(parse_formula("nu x. box x & q"));

  ConceptId value = evaluate(m, f);
  require(p.object_set_text(m.lattice[value].extent) == "{g1}",
          "denotation extent is not {g1}");
  require(p.attribute_set_text(m.lattice[value].intent) == "{m1 m2}",
          "denotation intent is not {m1 m2}");

  GameVerdict at_g1 = game_check(m, f, false, p.object_index("g1"));
  require(at_g1.winner == Player::Exists, "the object start g1 is not won by exists");
  GameVerdict at_m2 = game_check(m, f, true, p.attribute_index("m2"));
  require(at_m2.winner == Player::Forall, "the attribute start m2 is not won by forall");
}

// ---- 2. adequacy sweep ----------------------------------------------------

void adequacy_sweep() {
  std::mt19937_64 rng(0x5eed0002);
  const char* alternating[] = {
      "nu x. mu y. (p & box x) | dia y",
      "mu x. nu y. (p | dia x) & box y",
  };
  for (int round = 0; round < 200; ++round) {
    Model m = random_model(rng);
    std::vector<std::string> atoms;
    for (const auto& [name, c] : m.valuation) atoms.push_back(name);
    std::vector<FormulaPtr> formulas;
    for (const char* text : alternating)
      formulas.push_back(rename_apart(parse_formula(text)));
    while (formulas.size() < 50) formulas.push_back(random_formula(rng, atoms));
    for (const auto& f : formulas) {
      std::vector<AdequacyMismatch> bad = adequacy_check(m, f);
      if (!bad.empty())
        throw std::runtime_error("mismatch in round " + std::to_string(round) + " for " +
                                 print_formula(f));
    }
  }
}

// ---- 3. unfolding lemmas --------------------------------------------------

void unfolding_lemmas() {
  std::mt19937_64 rng(0x5eed0003);
  const char* bodies[] = {"p | box c", "p & dia c", "box dia c"};
  for (int round = 0; round < 100; ++round) {
    Model m = random_model(rng);
    for (const char* text : bodies) {
      LatticeMap f = formula_map(m, rename_apart(parse_formula(text)), "c");
      ConceptId least = oracle_lfp(m.lattice, f);
      ConceptId greatest = oracle_gfp(m.lattice, f);
      require(solve_unfolding_symbolic(m.lattice, f, GeneratorKind::Join, Player::Exists)
                      .fixpoint == greatest,
              "join generators with infinite plays to exists missed the gfp");
      require(solve_unfolding_symbolic(m.lattice, f, GeneratorKind::Join, Player::Forall)
                      .fixpoint == least,
              "join generators with infinite plays to forall missed the lfp");
      require(solve_unfolding_symbolic(m.lattice, f, GeneratorKind::Meet, Player::Forall)
                      .fixpoint == least,
              "meet generators with infinite plays to forall missed the lfp");
      require(solve_unfolding_symbolic(m.lattice, f, GeneratorKind::Meet, Player::Exists)
                      .fixpoint == greatest,
              "meet generators with infinite plays to exists missed the gfp");
      require(solve_gprime(m.lattice, f).fixpoint == least,
              "the single-element variant missed the lfp");
    }
  }
}

// ---- 4. explicit boards vs symbolic solver --------------------------------

void explicit_vs_symbolic() {
  std::mt19937_64 rng(0x5eed0004);
  int compared = 0;
  for (int round = 0; round < 60; ++round) {
    Model m = random_model(rng);
    LatticeMap f = formula_map(m, rename_apart(parse_formula("p | box c")), "c");
    for (GeneratorKind kind : {GeneratorKind::Join, GeneratorKind::Meet}) {
      std::size_t n = kind == GeneratorKind::Join ? join_generators(m.lattice).size()
                                                  : meet_generators(m.lattice).size();
      if (n > 8) continue;
      UnfoldBoard ub = build_unfolding_board(m.lattice, f, kind);
      for (Player w : {Player::Exists, Player::Forall}) {
        UnfoldOutcome via_board = solve_unfolding_board(m.lattice, ub, w);
        UnfoldOutcome symbolic = solve_unfolding_symbolic(m.lattice, f, kind, w);
        require(via_board.winning == symbolic.winning,
                "per-generator winners differ between the board and symbolic solvers");
        ++compared;
      }
    }
  }
  require(compared >= 100, "not enough boards were small enough to compare");
}

// ---- 5. parity solver against the exhaustive oracle -----------------------

void parity_oracle_sweep() {
  std::mt19937_64 rng(0x5eed0005);
  for (int round = 0; round < 500; ++round) {
    GameBoard b = random_board(rng, 6, 4);
    Solution s = solve_parity(b);
    ParityOracle oracle = oracle_parity(b);
    for (std::uint32_t v = 0; v < b.size(); ++v)
      if (s.winner[v] != oracle.winner[v])
        throw std::runtime_error("winner mismatch at position " + std::to_string(v) +
                                 " in round " + std::to_string(round));
  }
}

// ---- 6. simulation invariance ---------------------------------------------

void simulation_invariance() {
  std::vector<FormulaPtr> corpus = load_corpus();
  require(corpus.size() >= 30, "the formula corpus is too small");
  std::mt19937_64 rng(0x5eed0006);
  for (int round = 0; round < 50; ++round) {
    Model m1 = random_model(rng);
    Model m2 = random_model(rng);
    align_atoms(m1, m2);
    SimulationPair largest = largest_simulation(m1, m2);
    std::vector<FormulaPtr> shared = usable_corpus(usable_corpus(corpus, m1), m2);
    std::vector<InvarianceFailure> bad = invariance_test(m1, m2, largest, shared);
    if (!bad.empty())
      throw std::runtime_error("invariance failed in round " + std::to_string(round) +
                               " for " + bad[0].formula);
  }

  // Stored one-directional fixture: a simulation one way, none the other.
  Model b = load_model(model_path("oneway_b.ctx"));
  Model a = load_model(model_path("oneway_a.ctx"));
  SimulationPair pair = load_pair_file(model_path("oneway.pairs"), b, a);
  require(check_simulation(b, a, pair).empty(), "the stored pair is not a simulation");
  require(largest_simulation(a, b).s[0].is_empty(),
          "the reverse direction unexpectedly relates the objects");
  require(!bisimilar_objects(a, b, 0, 0), "the fixture objects must not be bisimilar");
}

// ---- 7. scenario suite ----------------------------------------------------

void scenario_suite() {
  struct Case {
    const char* file;
    Scenario scenario;
  };
  const Case cases[] = {
      {"coalition.ctx", Scenario::CoalitionExpand},
      {"coalition.ctx", Scenario::CoalitionSharpen},
      {"rough.ctx", Scenario::Rough},
      {"community.ctx", Scenario::Community},
  };
  for (const Case& c : cases) {
    Model m = load_model(model_path(c.file));
    ScenarioReport report = run_scenario(m, c.scenario);
    for (const ScenarioEntry& e : report.entries) {
      require(e.is_fixed_point, std::string(scenario_name(c.scenario)) +
                                    ": the result is not a fixed point of its map");
      require(e.is_extremal, std::string(scenario_name(c.scenario)) +
                                 ": the result is not extremal among fixed points");
    }
  }
  // Rough approximation with Rbox = I must return c0 itself, twice.
  Model rough = load_model(model_path("rough.ctx"));
  ScenarioReport report = run_scenario(rough, Scenario::Rough);
  for (const ScenarioEntry& e : report.entries)
    require(e.result == rough.valuation.at("c0"), "the rough scenario moved away from c0");
}

// ---- 8. algebra laws -------------------------------------------------------

void algebra_laws() {
  std::mt19937_64 rng(0x5eed0008);
  const char* axioms[][2] = {
      {"p", "p"},
      {"bot", "p"},
      {"p", "top"},
      {"p", "p | q"},
      {"q", "p | q"},
      {"p & q", "p"},
      {"p & q", "q"},
      {"top", "box top"},
      {"dia bot", "bot"},
      {"box p & box q", "box (p & q)"},
      {"dia (p | q)", "dia p | dia q"},
  };
  std::vector<std::pair<FormulaPtr, FormulaPtr>> parsed;
  for (const auto& ax : axioms)
    parsed.emplace_back(parse_formula(ax[0]), parse_formula(ax[1]));

  for (int round = 0; round < 40; ++round) {
    Model m = random_model(rng, {3, 3, 1});
    // Instantiate p and q with every pair of concepts.
    for (ConceptId cp = 0; cp < m.lattice.size(); ++cp)
      for (ConceptId cq = 0; cq < m.lattice.size(); ++cq) {
        m.valuation["p"] = cp;
        m.valuation["q"] = cq;
        for (const auto& [lhs, rhs] : parsed)
          if (!entails(m, *lhs, *rhs))
            throw std::runtime_error("axiom " + print_formula(lhs) + " entails " +
                                     print_formula(rhs) + " failed");
      }
    // Operator preservation laws on all concept pairs.
    for (ConceptId x = 0; x < m.lattice.size(); ++x)
      for (ConceptId y = 0; y < m.lattice.size(); ++y) {
        ConceptId bm = m.lattice.id_of_extent(
            box_concept(m.ctx, m.lattice[m.lattice.meet(x, y)]).extent);
        ConceptId bx = m.lattice.id_of_extent(box_concept(m.ctx, m.lattice[x]).extent);
        ConceptId by = m.lattice.id_of_extent(box_concept(m.ctx, m.lattice[y]).extent);
        require(bm == m.lattice.meet(bx, by), "box does not preserve a binary meet");
        ConceptId dj = m.lattice.id_of_extent(
            dia_concept(m.ctx, m.lattice[m.lattice.join(x, y)]).extent);
        ConceptId dx = m.lattice.id_of_extent(dia_concept(m.ctx, m.lattice[x]).extent);
        ConceptId dy = m.lattice.id_of_extent(dia_concept(m.ctx, m.lattice[y]).extent);
        require(dj == m.lattice.join(dx, dy), "dia does not preserve a binary join");
      }
  }
}

}  // namespace

int main() {
  criterion("1. worked example: denotation and game winners", 1.0, worked_example);
  criterion("2. adequacy sweep: 200 models x 50 formulas", 60.0, adequacy_sweep);
  criterion("3. unfolding lemmas on 100 random lattices", 30.0, unfolding_lemmas);
  criterion("4. explicit unfolding boards match the symbolic solver", 60.0,
            explicit_vs_symbolic);
  criterion("5. parity solver vs exhaustive oracle on 500 boards", 30.0, parity_oracle_sweep);
  criterion("6. simulation invariance and the one-way fixture", 60.0, simulation_invariance);
  criterion("7. scenario suite on the fixture models", 5.0, scenario_suite);
  criterion("8. algebra laws on exhaustive instantiations", 30.0, algebra_laws);

  if (failures == 0)
    std::printf("all 8 criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
