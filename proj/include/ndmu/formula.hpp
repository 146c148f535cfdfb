#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndmu {

enum class FormulaKind { Atom, Var, Top, Bot, And, Or, Box, Dia, Nu, Mu };
enum class VarSort { Free, NuBound, MuBound };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable syntax tree. Identifiers bound by an enclosing nu/mu parse as Var
// nodes carrying the binder's sort; every other identifier parses as an Atom
// and is resolved against the model valuation (or an explicit environment)
// during evaluation.
class Formula {
 public:
  FormulaKind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // Atom, Var, Nu, Mu
  VarSort var_sort() const { return var_sort_; }     // Var
  const FormulaPtr& lhs() const { return lhs_; }     // And, Or
  const FormulaPtr& rhs() const { return rhs_; }     // And, Or
  const FormulaPtr& body() const { return lhs_; }    // Box, Dia, Nu, Mu

  static FormulaPtr atom(std::string name);
  static FormulaPtr var(std::string name, VarSort sort);
  static FormulaPtr top();
  static FormulaPtr bot();
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr box(FormulaPtr b);
  static FormulaPtr dia(FormulaPtr b);
  static FormulaPtr nu(std::string v, FormulaPtr b);
  static FormulaPtr mu(std::string v, FormulaPtr b);

 private:
  Formula(FormulaKind k, std::string n, VarSort vs, FormulaPtr l, FormulaPtr r)
      : kind_(k), name_(std::move(n)), var_sort_(vs), lhs_(std::move(l)), rhs_(std::move(r)) {}

  FormulaKind kind_;
  std::string name_;
  VarSort var_sort_ = VarSort::Free;
  FormulaPtr lhs_, rhs_;
};

struct SourcePos {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos p, const std::string& msg);
  SourcePos pos;
};

// Grammar: '|' below '&' below prefix box/dia, both connectives
// left-associative; a binder's scope extends to the end of the enclosing
// parenthesis or input. '#' starts a line comment.
FormulaPtr parse_formula(std::string_view text);

// Minimal-parenthesis rendering; parse_formula(print_formula(f)) rebuilds f.
std::string print_formula(const Formula& f);
inline std::string print_formula(const FormulaPtr& f) { return print_formula(*f); }

bool equal_formulas(const Formula& a, const Formula& b);

// Names of Atom leaves (identifiers not captured by any binder), sorted.
std::vector<std::string> atom_names(const Formula& f);
// Names of Var leaves not bound within f itself, sorted. Empty on trees
// produced by parse_formula, where unbound identifiers become atoms.
std::vector<std::string> unbound_variables(const Formula& f);
// Binder names in first-appearance order.
std::vector<std::string> bound_variables(const Formula& f);

// Hygienic: binder names are pairwise distinct, no binder name is also used
// as an atom, and every Var leaf is captured by an enclosing binder of the
// same name and sort.
bool is_hygienic(const Formula& f);

// Renames binders so the result is hygienic, preserving meaning. Fresh names
// take the form name_k with the smallest k >= 1 avoiding all atom names and
// previously chosen names. Hygienic input comes back unchanged.
FormulaPtr rename_apart(const FormulaPtr& f);

// Maps each bound variable to its binder node. Requires hygienic input.
std::map<std::string, const Formula*> binder_nodes(const Formula& f);

// Body of the binder for z. Requires hygienic input; throws if z is unbound.
FormulaPtr binder_body(const Formula& f, const std::string& z);

// Order on bound variables: z1 <= z2 when z2 occurs free in the body of
// z1's binder; the relation is exposed reflexively closed. Ranks form a
// linear extension (1-based), ties broken by name.
class DependencyOrder {
 public:
  const std::vector<std::string>& variables() const { return vars_; }  // rank order
  bool contains(const std::string& z) const { return rank_.count(z) != 0; }
  bool leq(const std::string& a, const std::string& b) const;
  int rank(const std::string& z) const;
  VarSort sort_of(const std::string& z) const;

 private:
  friend DependencyOrder dependency_order(const Formula&);
  std::vector<std::string> vars_;
  std::map<std::string, int> rank_;
  std::map<std::string, VarSort> sort_;
  std::map<std::string, std::vector<std::string>> above_;  // z -> {w : z <= w, w != z}
};

// Requires hygienic input.
DependencyOrder dependency_order(const Formula& f);

}  // namespace ndmu
