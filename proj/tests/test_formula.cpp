#include <doctest.h>

#include <random>

#include "ndmu/formula.hpp"
#include "ndmu/random.hpp"

using namespace ndmu;

TEST_SUITE("formula") {

TEST_CASE("precedence and associativity round-trip") {
  auto same = [](const std::string& in, const std::string& out) {
    CHECK(print_formula(parse_formula(in)) == out);
  };
  same("p", "p");
  same("top", "top");
  same("bot", "bot");
  same("p & q | r", "p & q | r");          // & binds tighter than |
  same("p | q & r", "p | q & r");
  same("(p | q) & r", "(p | q) & r");      // parens that matter survive
  same("((p))", "p");                      // parens that do not matter vanish
  same("box p & q", "box p & q");          // unary binds tightest
  same("box (p & q)", "box (p & q)");
  same("dia dia p", "dia dia p");
  same("p & q & r", "p & q & r");          // left association needs no parens
  same("p & (q & r)", "p & (q & r)");
  same("nu x. x & p", "nu x. x & p");      // binder scope is maximal
  same("(nu x. x) & p", "(nu x. x) & p");
  same("mu y. nu x. x | y", "mu y. nu x. x | y");
}

TEST_CASE("parse distinguishes bound variables from atoms") {
  FormulaPtr f = parse_formula("nu x. x & p");
  CHECK(f->kind() == FormulaKind::Nu);
  const Formula& conj = *f->body();
  CHECK(conj.lhs()->kind() == FormulaKind::Var);
  CHECK(conj.lhs()->var_sort() == VarSort::NuBound);
  CHECK(conj.rhs()->kind() == FormulaKind::Atom);

  // The same identifier outside any binder is an atom.
  FormulaPtr g = parse_formula("x & p");
  CHECK(g->lhs()->kind() == FormulaKind::Atom);
  CHECK(atom_names(*g) == std::vector<std::string>{"p", "x"});
}

TEST_CASE("binder rebinding shadows correctly") {
  FormulaPtr f = parse_formula("nu x. box x & mu x. dia x");
  // Inner x belongs to mu, outer to nu.
  CHECK_FALSE(is_hygienic(*f));
  FormulaPtr r = rename_apart(f);
  CHECK(is_hygienic(*r));
  CHECK(equal_formulas(*parse_formula(print_formula(r)), *r));
  // Renaming must not merge the two binders.
  CHECK(bound_variables(*r).size() == 2);
}

TEST_CASE("round-trip on the corpus of shapes") {
  const char* shapes[] = {
      "nu x. p & box x",
      "mu x. p | dia x",
      "nu x. mu y. (p & box x) | dia y",
      "mu x. (nu y. box y) & p | dia x",
      "box (p | q) & dia bot",
      "top | bot & p",
  };
  for (const char* text : shapes) {
    FormulaPtr f = parse_formula(text);
    FormulaPtr again = parse_formula(print_formula(f));
    CHECK(equal_formulas(*f, *again));
  }
}

TEST_CASE("round-trip on random formulas") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = random_formula(rng, {"p", "q", "r"});
    CAPTURE(print_formula(f));
    CHECK(is_hygienic(*f));
    CHECK(unbound_variables(*f).empty());
    FormulaPtr again = parse_formula(print_formula(f));
    CHECK(equal_formulas(*f, *again));
  }
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("p &"), ParseError);
  CHECK_THROWS_AS(parse_formula("(p"), ParseError);
  CHECK_THROWS_AS(parse_formula("nu"), ParseError);
  CHECK_THROWS_AS(parse_formula("nu x"), ParseError);
  CHECK_THROWS_AS(parse_formula("nu x."), ParseError);
  CHECK_THROWS_AS(parse_formula("p ? q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p q"), ParseError);
  try {
    parse_formula("p &\n& q");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos.line == 2);
  }
}

TEST_CASE("comments and whitespace are ignored") {
  FormulaPtr f = parse_formula("# heading\n  p &  # trailing\n q\n");
  CHECK(print_formula(f) == "p & q");
}

TEST_CASE("hygiene flags shared and shadowed names") {
  CHECK(is_hygienic(*parse_formula("nu x. mu y. x & y")));
  CHECK_FALSE(is_hygienic(*parse_formula("nu x. x & mu x. x")));
  // An identifier used both as an atom and as a bound variable clashes.
  CHECK_FALSE(is_hygienic(*parse_formula("x & nu x. x")));
  FormulaPtr fixed = rename_apart(parse_formula("nu x. x & mu x. x"));
  CHECK(is_hygienic(*fixed));
}

TEST_CASE("rename_apart preserves shape") {
  FormulaPtr f = parse_formula("nu x. (mu y. y | x) & mu x. dia x");
  FormulaPtr r = rename_apart(f);
  CHECK(is_hygienic(*r));
  // Same tree modulo names: print both with names erased.
  std::string a = print_formula(f), b = print_formula(r);
  CHECK(a.size() <= b.size() + 8);  // fresh names may be longer
  CHECK(bound_variables(*r).size() == 3);
}

TEST_CASE("unbound variables on hand-built trees") {
  FormulaPtr loose = Formula::conj(Formula::var("z", VarSort::MuBound), Formula::atom("p"));
  CHECK(unbound_variables(*loose) == std::vector<std::string>{"z"});
  FormulaPtr closed = Formula::mu("z", loose);
  CHECK(unbound_variables(*closed).empty());
}

TEST_CASE("dependency order ranks inner variables below outer ones") {
  // In nu x. mu y. (p & box x) | dia y the body of y's binder mentions x
  // freely, so y <= x and y gets the smaller rank.
  FormulaPtr f = parse_formula("nu x. mu y. (p & box x) | dia y");
  DependencyOrder order = dependency_order(*f);
  CHECK(order.variables() == std::vector<std::string>{"y", "x"});
  CHECK(order.rank("y") == 1);
  CHECK(order.rank("x") == 2);
  CHECK(order.leq("y", "x"));
  CHECK_FALSE(order.leq("x", "y"));
  CHECK(order.leq("x", "x"));
  CHECK(order.sort_of("x") == VarSort::NuBound);
  CHECK(order.sort_of("y") == VarSort::MuBound);
}

TEST_CASE("dependency order ignores rebound occurrences") {
  // y is bound inside the body of x's binder, so it is not free there and
  // the two variables are incomparable; ranks fall back to name order.
  FormulaPtr f = parse_formula("nu x. (p & box x) & mu y. y | q");
  DependencyOrder order = dependency_order(*f);
  CHECK_FALSE(order.leq("x", "y"));
  CHECK_FALSE(order.leq("y", "x"));
  CHECK(order.variables() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("binder body lookup") {
  FormulaPtr f = parse_formula("nu x. mu y. x | dia y");
  FormulaPtr inner = binder_body(*f, "y");
  CHECK(print_formula(inner) == "x | dia y");
  CHECK(binder_nodes(*f).size() == 2);
  CHECK_THROWS(binder_body(*f, "zzz"));
}

}  // TEST_SUITE
