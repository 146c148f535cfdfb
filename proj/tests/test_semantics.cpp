#include <doctest.h>

#include <random>

#include "ndmu/random.hpp"
#include "ndmu/semantics.hpp"
#include "testutil.hpp"

using namespace ndmu;
using namespace ndmu::testutil;

namespace {

// Map induced by a formula text with one free identifier acting as the
// variable; the identifier must not be a model atom, so it resolves through
// the environment.
std::function<ConceptId(ConceptId)> body_map(const Model& m, const std::string& text,
                                             const std::string& var = "c") {
  FormulaPtr body = rename_apart(parse_formula(text));
  return [&m, body, var](ConceptId c) {
    Environment env;
    env[var] = c;
    return evaluate(m, body, env);
  };
}

}  // namespace

TEST_SUITE("semantics") {

TEST_CASE("trivial fixed points") {
  Model m = load_model(model_path("small.ctx"));
  auto identity = [](ConceptId c) { return c; };
  CHECK(lfp(m.lattice, identity) == m.lattice.bottom());
  CHECK(gfp(m.lattice, identity) == m.lattice.top());
  for (ConceptId c = 0; c < m.lattice.size(); ++c) {
    auto constant = [c](ConceptId) { return c; };
    CHECK(lfp(m.lattice, constant) == c);
    CHECK(gfp(m.lattice, constant) == c);
  }
}

TEST_CASE("iterated fixed points match the Knaster-Tarski oracle") {
  const char* bodies[] = {"c0 | box c", "c0 & dia c", "box dia c", "dia c | box c",
                          "(c0 & box c) | dia bot"};
  for (const char* model_file : {"coalition.ctx", "rough.ctx"}) {
    Model m = load_model(model_path(model_file));
    for (const char* text : bodies) {
      auto f = body_map(m, text);
      CHECK(lfp(m.lattice, f) == oracle_lfp(m.lattice, f));
      CHECK(gfp(m.lattice, f) == oracle_gfp(m.lattice, f));
    }
  }
}

TEST_CASE("non-monotone maps trip the iteration guard") {
  Model m = load_model(model_path("small.ctx"));
  REQUIRE(m.lattice.size() >= 2);
  ConceptId t = m.lattice.top(), b = m.lattice.bottom();
  auto flip = [t, b](ConceptId c) { return c == b ? t : b; };
  CHECK_THROWS_AS(lfp(m.lattice, flip), std::invalid_argument);
}

TEST_CASE("connective clauses are lattice operations") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 25; ++round) {
    Model m = random_model(rng);
    std::vector<std::string> atoms;
    for (const auto& [name, c] : m.valuation) atoms.push_back(name);
    const std::string& p = atoms.front();
    const std::string& q = atoms.back();
    ConceptId cp = m.valuation.at(p), cq = m.valuation.at(q);
    CHECK(evaluate(m, parse_formula(p + " & " + q)) == m.lattice.meet(cp, cq));
    CHECK(evaluate(m, parse_formula(p + " | " + q)) == m.lattice.join(cp, cq));
    CHECK(evaluate(m, parse_formula("top")) == m.lattice.top());
    CHECK(evaluate(m, parse_formula("bot")) == m.lattice.bottom());
    // Box/dia clauses agree with the concept operators.
    ConceptId boxed = evaluate(m, parse_formula("box " + p));
    CHECK(boxed == m.lattice.id_of_extent(box_concept(m.ctx, m.lattice[cp]).extent));
    ConceptId diad = evaluate(m, parse_formula("dia " + p));
    CHECK(diad == m.lattice.id_of_extent(dia_concept(m.ctx, m.lattice[cp]).extent));
  }
}

TEST_CASE("worked example evaluates exactly") {
  Model m = load_model(model_path("small.ctx"));
  const Polarity& p = m.polarity();
  ConceptId v = evaluate(m, rename_apart(parse_formula("nu x. box x & q")));
  CHECK(p.object_set_text(m.lattice[v].extent) == "{g1}");
  CHECK(p.attribute_set_text(m.lattice[v].intent) == "{m1 m2}");
  CHECK(forces(m, "g1", *parse_formula("nu x. box x & q")));
  CHECK_FALSE(forces(m, "g2", *parse_formula("nu x. box x & q")));
  CHECK(coforces(m, "m2", *parse_formula("nu x. box x & q")));
  CHECK_FALSE(coforces(m, "m3", *parse_formula("nu x. box x & q")));
}

TEST_CASE("fixed-point laws: binder denotations are extremal fixed points") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 20; ++round) {
    Model m = random_model(rng);
    std::vector<std::string> atoms;
    for (const auto& [name, c] : m.valuation) atoms.push_back(name);
    const std::string a = atoms.front();
    const char* shapes[] = {"c | box c", "c & dia c", "box c", "dia c"};
    for (const char* raw : shapes) {
      std::string text(raw);
      // Keep one occurrence tied to an atom so different models differ.
      std::string body_text = "(" + text + ") | " + a;
      auto f = body_map(m, body_text);
      ConceptId mu_val = evaluate(m, rename_apart(parse_formula("mu c. " + body_text)));
      ConceptId nu_val = evaluate(m, rename_apart(parse_formula("nu c. " + body_text)));
      CHECK(f(mu_val) == mu_val);
      CHECK(f(nu_val) == nu_val);
      for (ConceptId c = 0; c < m.lattice.size(); ++c) {
        if (m.lattice.leq(f(c), c)) CHECK(m.lattice.leq(mu_val, c));   // least prefixed
        if (m.lattice.leq(c, f(c))) CHECK(m.lattice.leq(c, nu_val));   // greatest postfixed
      }
    }
  }
}

TEST_CASE("unfolding law via environment binding") {
  Model m = load_model(model_path("coalition.ctx"));
  const char* binders[] = {"nu", "mu"};
  const char* bodies[] = {"c0 | box z", "c0 & dia z", "box dia z | c0"};
  for (const char* eta : binders)
    for (const char* body : bodies) {
      std::string whole = std::string(eta) + " z. " + body;
      ConceptId fix = evaluate(m, rename_apart(parse_formula(whole)));
      Environment env;
      env["z"] = fix;
      CHECK(evaluate(m, parse_formula(body), env) == fix);
    }
}

TEST_CASE("monotonicity in the environment") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 15; ++round) {
    Model m = random_model(rng);
    std::vector<std::string> atoms;
    for (const auto& [name, c] : m.valuation) atoms.push_back(name);
    auto f = body_map(m, "(box c & " + atoms.front() + ") | dia c");
    for (ConceptId a = 0; a < m.lattice.size(); ++a)
      for (ConceptId b = 0; b < m.lattice.size(); ++b)
        if (m.lattice.leq(a, b)) CHECK(m.lattice.leq(f(a), f(b)));
  }
}

TEST_CASE("denotations are Galois-stable pairs") {
  std::mt19937_64 rng(37);
  std::vector<FormulaPtr> corpus = load_corpus();
  for (int round = 0; round < 10; ++round) {
    Model m = random_model(rng);
    for (const auto& f : usable_corpus(corpus, m)) {
      ConceptId v = evaluate(m, f);
      const Concept& c = m.lattice[v];
      CHECK(m.polarity().up(c.extent) == c.intent);
      CHECK(m.polarity().down(c.intent) == c.extent);
    }
  }
}

TEST_CASE("entails basics") {
  Model m = load_model(model_path("small.ctx"));
  CHECK(entails(m, *parse_formula("q"), *parse_formula("q")));
  CHECK(entails(m, *parse_formula("bot"), *parse_formula("q")));
  CHECK(entails(m, *parse_formula("q"), *parse_formula("top")));
  CHECK(entails(m, *parse_formula("box q & q"), *parse_formula("q")));
}

TEST_CASE("semantics refuses incompatible contexts") {
  CHECK_THROWS_AS(load_model(model_path("incompatible.ctx")), IncompatibleContext);
  try {
    load_model(model_path("incompatible.ctx"));
  } catch (const IncompatibleContext& e) {
    REQUIRE_FALSE(e.violations.empty());
    CHECK(e.violations[0].relation == "Rbox");
  }
  // The gate can be disabled for inspection.
  Model m = load_model(model_path("incompatible.ctx"), false);
  CHECK(m.lattice.size() == 4);
}

TEST_CASE("unknown atoms and unbound variables are errors") {
  Model m = load_model(model_path("small.ctx"));
  CHECK_THROWS_AS(evaluate(m, parse_formula("nosuch")), std::invalid_argument);
  FormulaPtr loose = Formula::conj(Formula::var("z", VarSort::MuBound), Formula::atom("q"));
  CHECK_THROWS_AS(evaluate(m, *loose), std::invalid_argument);
}

TEST_CASE("valuation seeds are closed to concepts") {
  Model m = load_model(model_path("coalition.ctx"));
  // Seed {b} closes to ({b}, {y z}).
  ConceptId c0 = m.valuation.at("c0");
  CHECK(m.polarity().object_set_text(m.lattice[c0].extent) == "{b}");
  CHECK(m.polarity().attribute_set_text(m.lattice[c0].intent) == "{y z}");
}

}  // TEST_SUITE
