#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ndmu/formula.hpp"
#include "ndmu/polarity.hpp"

namespace ndmu {

class IncompatibleContext : public std::runtime_error {
 public:
  explicit IncompatibleContext(std::vector<CompatViolation> v);
  std::vector<CompatViolation> violations;
};

// Enriched context together with its concept lattice and an atom valuation.
struct Model {
  EnrichedContext ctx;
  ConceptLattice lattice;
  std::map<std::string, ConceptId> valuation;

  const Polarity& polarity() const { return ctx.polarity; }
};

// Builds the lattice, closes each valuation seed to a concept, and by
// default refuses contexts whose relations are not compatible.
Model make_model(const EnrichedContext& ctx,
                 const std::vector<std::pair<std::string, ObjectSet>>& seeds,
                 bool require_compatible = true);
Model load_model(const std::string& path, bool require_compatible = true);

using Environment = std::map<std::string, ConceptId>;

// Fixed points by iteration from bottom (lfp) or top (gfp); iteration that
// fails to stabilize within |lattice| + 1 steps means the map was not
// monotone and raises an error.
ConceptId lfp(const ConceptLattice& lat, const std::function<ConceptId(ConceptId)>& f);
ConceptId gfp(const ConceptLattice& lat, const std::function<ConceptId(ConceptId)>& f);

// Denotation of f in the model. Atom leaves resolve against the valuation
// first and then against env; unresolved names raise an error.
ConceptId evaluate(const Model& m, const Formula& f, const Environment& env = {});
inline ConceptId evaluate(const Model& m, const FormulaPtr& f, const Environment& env = {}) {
  return evaluate(m, *f, env);
}

// g is in the extent of the denotation / m is in its intent.
bool forces(const Model& m, int object, const Formula& f);
bool coforces(const Model& m, int attribute, const Formula& f);
bool forces(const Model& m, const std::string& object, const Formula& f);
bool coforces(const Model& m, const std::string& attribute, const Formula& f);

// Denotation of f lies below the denotation of g.
bool entails(const Model& m, const Formula& f, const Formula& g);

}  // namespace ndmu
