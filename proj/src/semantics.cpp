#include "ndmu/semantics.hpp"

#include <sstream>

namespace ndmu {

namespace {

std::string violations_text(const std::vector<CompatViolation>& v) {
  std::ostringstream out;
  out << "context relations are not compatible:";
  for (const CompatViolation& x : v) out << "\n  " << x.describe();
  return out.str();
}

}  // namespace

IncompatibleContext::IncompatibleContext(std::vector<CompatViolation> v)
    : std::runtime_error(violations_text(v)), violations(std::move(v)) {}

Model make_model(const EnrichedContext& ctx,
                 const std::vector<std::pair<std::string, ObjectSet>>& seeds,
                 bool require_compatible) {
  if (require_compatible) {
    std::vector<CompatViolation> v = check_compatible(ctx);
    if (!v.empty()) throw IncompatibleContext(std::move(v));
  }
  Model m{ctx, ConceptLattice::build(ctx.polarity), {}};
  for (const auto& [name, seed] : seeds) m.valuation[name] = m.lattice.close_extent_seed(seed);
  return m;
}

Model load_model(const std::string& path, bool require_compatible) {
  ContextFile file = load_context_file(path);
  return make_model(file.ctx, file.valuations, require_compatible);
}

namespace {

ConceptId iterate(const ConceptLattice& lat, const std::function<ConceptId(ConceptId)>& f,
                  ConceptId start) {
  ConceptId u = start;
  for (std::size_t step = 0; step <= lat.size(); ++step) {
    ConceptId v = f(u);
    if (v == u) return u;
    u = v;
  }
  throw std::invalid_argument("fixed-point iteration did not stabilize within lattice height; "
                              "the map is not monotone");
}

}  // namespace

ConceptId lfp(const ConceptLattice& lat, const std::function<ConceptId(ConceptId)>& f) {
  return iterate(lat, f, lat.bottom());
}

ConceptId gfp(const ConceptLattice& lat, const std::function<ConceptId(ConceptId)>& f) {
  return iterate(lat, f, lat.top());
}

namespace {

ConceptId eval_rec(const Model& m, const Formula& f, const Environment& env) {
  const ConceptLattice& lat = m.lattice;
  switch (f.kind()) {
    case FormulaKind::Atom: {
      auto it = m.valuation.find(f.name());
      if (it != m.valuation.end()) return it->second;
      auto ev = env.find(f.name());
      if (ev != env.end()) return ev->second;
      throw std::invalid_argument("unknown atom or unbound variable '" + f.name() + "'");
    }
    case FormulaKind::Var: {
      auto it = env.find(f.name());
      if (it != env.end()) return it->second;
      throw std::invalid_argument("unbound variable '" + f.name() + "'");
    }
    case FormulaKind::Top:
      return lat.top();
    case FormulaKind::Bot:
      return lat.bottom();
    case FormulaKind::And:
      return lat.meet(eval_rec(m, *f.lhs(), env), eval_rec(m, *f.rhs(), env));
    case FormulaKind::Or:
      return lat.join(eval_rec(m, *f.lhs(), env), eval_rec(m, *f.rhs(), env));
    case FormulaKind::Box: {
      Concept c = box_concept(m.ctx, lat[eval_rec(m, *f.body(), env)]);
      return lat.id_of_extent(c.extent);
    }
    case FormulaKind::Dia: {
      Concept c = dia_concept(m.ctx, lat[eval_rec(m, *f.body(), env)]);
      return lat.id_of_extent(c.extent);
    }
    case FormulaKind::Nu:
    case FormulaKind::Mu: {
      Environment inner = env;
      auto step = [&](ConceptId c) {
        inner[f.name()] = c;
        return eval_rec(m, *f.body(), inner);
      };
      return f.kind() == FormulaKind::Nu ? gfp(lat, step) : lfp(lat, step);
    }
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace

ConceptId evaluate(const Model& m, const Formula& f, const Environment& env) {
  return eval_rec(m, f, env);
}

bool forces(const Model& m, int object, const Formula& f) {
  return m.lattice[evaluate(m, f)].extent.contains(object);
}

bool coforces(const Model& m, int attribute, const Formula& f) {
  return m.lattice[evaluate(m, f)].intent.contains(attribute);
}

bool forces(const Model& m, const std::string& object, const Formula& f) {
  int g = m.polarity().object_index(object);
  if (g < 0) throw std::invalid_argument("unknown object '" + object + "'");
  return forces(m, g, f);
}

bool coforces(const Model& m, const std::string& attribute, const Formula& f) {
  int a = m.polarity().attribute_index(attribute);
  if (a < 0) throw std::invalid_argument("unknown attribute '" + attribute + "'");
  return coforces(m, a, f);
}

bool entails(const Model& m, const Formula& f, const Formula& g) {
  return m.lattice.leq(evaluate(m, f), evaluate(m, g));
}

}  // namespace ndmu
