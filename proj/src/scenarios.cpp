#include "ndmu/scenarios.hpp"

#include "ndmu/unfolding.hpp"

namespace ndmu {

Scenario scenario_from_name(const std::string& name) {
  if (name == "coalition-expand") return Scenario::CoalitionExpand;
  if (name == "coalition-sharpen") return Scenario::CoalitionSharpen;
  if (name == "rough") return Scenario::Rough;
  if (name == "community") return Scenario::Community;
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::CoalitionExpand:
      return "coalition-expand";
    case Scenario::CoalitionSharpen:
      return "coalition-sharpen";
    case Scenario::Rough:
      return "rough";
    case Scenario::Community:
      return "community";
  }
  return "";
}

bool ScenarioReport::ok() const {
  for (const ScenarioEntry& e : entries)
    if (!e.is_fixed_point || !e.is_extremal) return false;
  return true;
}

namespace {

void require_inclusion_in_rbox(const Model& m) {
  const Polarity& p = m.polarity();
  for (int g = 0; g < p.object_count(); ++g)
    if (!p.row(g).subset_of(m.ctx.rbox_row[g]))
      for (int a : p.row(g).minus(m.ctx.rbox_row[g]))
        throw PreconditionError("incidence is not within Rbox: (" + p.object_name(g) + ", " +
                                p.attribute_name(a) + ") is in I but not in Rbox");
}

void require_inclusion_in_rdia(const Model& m) {
  const Polarity& p = m.polarity();
  for (int g = 0; g < p.object_count(); ++g)
    if (!p.row(g).subset_of(m.ctx.rdia_col[g]))
      for (int a : p.row(g).minus(m.ctx.rdia_col[g]))
        throw PreconditionError("incidence is not within the converse of Rdia: (" +
                                p.object_name(g) + ", " + p.attribute_name(a) +
                                ") is in I but (" + p.attribute_name(a) + ", " +
                                p.object_name(g) + ") is not in Rdia");
}

void require_atom(const Model& m, const std::string& atom) {
  if (!m.valuation.count(atom))
    throw std::invalid_argument("scenario needs an atom named '" + atom + "' in the model");
}

ScenarioEntry analyse(const Model& m, const std::string& description, const FormulaPtr& body,
                      const std::string& var, bool least) {
  const ConceptLattice& lat = m.lattice;
  LatticeMap f = formula_map(m, body, var);

  ScenarioEntry e;
  e.description = description;
  FormulaPtr closed = least ? Formula::mu(var, body) : Formula::nu(var, body);
  e.formula = print_formula(closed);
  e.result = least ? lfp(lat, f) : gfp(lat, f);
  e.least = least;
  e.is_fixed_point = f(e.result) == e.result;
  e.is_extremal = true;
  for (ConceptId c = 0; c < lat.size(); ++c) {
    if (f(c) != c) continue;
    if (least ? !lat.leq(e.result, c) : !lat.leq(c, e.result)) e.is_extremal = false;
  }
  return e;
}

// Var leaves need the binder's sort for downstream printing to stay honest.
FormulaPtr var_of(const std::string& name, bool least) {
  return Formula::var(name, least ? VarSort::MuBound : VarSort::NuBound);
}

std::string fresh_var(const Model& m) {
  std::string v = "c";
  int k = 0;
  while (m.valuation.count(v)) v = "c_" + std::to_string(++k);
  return v;
}

}  // namespace

ScenarioReport run_scenario(const Model& m, Scenario s) {
  ScenarioReport report;
  std::string var = fresh_var(m);
  auto c0 = [] { return Formula::atom("c0"); };

  switch (s) {
    case Scenario::CoalitionExpand: {
      require_atom(m, "c0");
      require_inclusion_in_rbox(m);
      report.entries.push_back(analyse(
          m, "smallest box-stable coalition containing c0",
          Formula::disj(c0(), Formula::box(var_of(var, true))), var, true));
      break;
    }
    case Scenario::CoalitionSharpen: {
      require_atom(m, "c0");
      require_inclusion_in_rdia(m);
      report.entries.push_back(analyse(
          m, "largest dia-supported coalition within c0",
          Formula::conj(c0(), Formula::dia(var_of(var, false))), var, false));
      break;
    }
    case Scenario::Rough: {
      require_atom(m, "c0");
      report.entries.push_back(analyse(
          m, "lower approximation: largest box-stable concept within c0",
          Formula::conj(c0(), Formula::box(var_of(var, false))), var, false));
      report.entries.push_back(analyse(
          m, "upper approximation: smallest dia-stable concept containing c0",
          Formula::disj(c0(), Formula::dia(var_of(var, true))), var, true));
      break;
    }
    case Scenario::Community: {
      report.entries.push_back(analyse(m, "largest box-dia stable community",
                                       Formula::box(Formula::dia(var_of(var, false))), var,
                                       false));
      report.entries.push_back(analyse(m, "smallest box-dia stable community",
                                       Formula::box(Formula::dia(var_of(var, true))), var,
                                       true));
      break;
    }
  }
  return report;
}

}  // namespace ndmu
