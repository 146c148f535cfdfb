#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ndmu/sets.hpp"

namespace ndmu {

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
  ModelError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

// Two-sided context (G, M, I) with the induced Galois connection between
// object sets and attribute sets.
class Polarity {
 public:
  Polarity(std::vector<std::string> objects, std::vector<std::string> attributes);

  void relate(int g, int m);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int attribute_count() const { return static_cast<int>(attributes_.size()); }
  const std::string& object_name(int g) const { return objects_.at(g); }
  const std::string& attribute_name(int m) const { return attributes_.at(m); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  int object_index(std::string_view name) const;     // -1 when absent
  int attribute_index(std::string_view name) const;  // -1 when absent

  bool incident(int g, int m) const { return row_[g].contains(m); }
  const AttributeSet& row(int g) const { return row_.at(g); }  // {m : g I m}
  const ObjectSet& column(int m) const { return col_.at(m); }  // {g : g I m}

  ObjectSet all_objects() const { return ObjectSet::full(object_count()); }
  AttributeSet all_attributes() const { return AttributeSet::full(attribute_count()); }

  AttributeSet up(ObjectSet b) const;    // {m : forall g in b, g I m}
  ObjectSet down(AttributeSet y) const;  // {g : forall m in y, g I m}
  ObjectSet closure_extent(ObjectSet b) const { return down(up(b)); }
  AttributeSet closure_intent(AttributeSet y) const { return up(down(y)); }

  std::string object_set_text(ObjectSet) const;
  std::string attribute_set_text(AttributeSet) const;

 private:
  std::vector<std::string> objects_, attributes_;
  std::vector<AttributeSet> row_;
  std::vector<ObjectSet> col_;
};

// Context on names x names with inequality as incidence; its concept lattice
// is the full powerset of the name set.
Polarity powerset_polarity(const std::vector<std::string>& names);

struct Concept {
  ObjectSet extent;
  AttributeSet intent;
  bool operator==(const Concept&) const = default;
};

using ConceptId = std::uint32_t;

// All Galois-stable (extent, intent) pairs of a context, with the complete
// lattice structure given by extent inclusion. Meets intersect extents,
// joins intersect intents; both land on existing concepts.
class ConceptLattice {
 public:
  static ConceptLattice build(const Polarity& p, std::size_t max_cells = 400);

  const Polarity& polarity() const { return polarity_; }
  std::size_t size() const { return concepts_.size(); }
  const Concept& operator[](ConceptId c) const { return concepts_.at(c); }
  const std::vector<Concept>& concepts() const { return concepts_; }

  ConceptId id_of_extent(ObjectSet extent) const;  // throws when not stable
  ConceptId top() const { return top_; }
  ConceptId bottom() const { return bottom_; }
  bool leq(ConceptId a, ConceptId b) const;
  ConceptId join(ConceptId a, ConceptId b) const;
  ConceptId meet(ConceptId a, ConceptId b) const;
  ConceptId join_all(const std::vector<ConceptId>& cs) const;  // empty -> bottom
  ConceptId meet_all(const std::vector<ConceptId>& cs) const;  // empty -> top
  ConceptId object_concept(int g) const;
  ConceptId attribute_concept(int m) const;
  ConceptId close_extent_seed(ObjectSet seed) const;  // (seed^ul, seed^u)

  std::string to_string(ConceptId c) const;

 private:
  explicit ConceptLattice(Polarity p) : polarity_(std::move(p)) {}

  Polarity polarity_;
  std::vector<Concept> concepts_;
  std::unordered_map<std::uint64_t, ConceptId> by_extent_;
  ConceptId top_ = 0, bottom_ = 0;
};

// Context enriched with one box relation (subset of G x M) and one dia
// relation (subset of M x G).
struct EnrichedContext {
  Polarity polarity;
  std::vector<AttributeSet> rbox_row;  // per g: {m : g Rbox m}
  std::vector<ObjectSet> rbox_col;     // per m: {g : g Rbox m}
  std::vector<ObjectSet> rdia_row;     // per m: {g : m Rdia g}
  std::vector<AttributeSet> rdia_col;  // per g: {m : m Rdia g}

  explicit EnrichedContext(Polarity p);
  void add_rbox(int g, int m);
  void add_rdia(int m, int g);
};

struct CompatViolation {
  std::string relation;  // "Rbox" or "Rdia"
  std::string section;   // "row g1" or "column m2"
  std::string set_text;
  std::string closure_text;
  std::string describe() const;
};

// A relation is compatible when all its rows and columns are Galois-stable.
// The modal operators are only meaningful over compatible contexts.
std::vector<CompatViolation> check_compatible(const EnrichedContext& e);

// Box sends a concept to (Rbox-witnesses of its intent, closure); dia sends
// a concept to (closure, Rdia-witnesses of its extent). Inputs must be
// concepts of the underlying context.
Concept box_concept(const EnrichedContext& e, const Concept& c);
Concept dia_concept(const EnrichedContext& e, const Concept& c);

struct ContextFile {
  EnrichedContext ctx;
  std::vector<std::pair<std::string, ObjectSet>> valuations;  // atom -> extent seed
};

// Text format, one 'key: payload' entry per line ('#' comments allowed):
//   objects: g1 g2
//   attributes: m1 m2 m3
//   I: g1 m1; g1 m2; g2 m3
//   Rbox: g1 m1; ...        (pairs are object attribute)
//   Rdia: m3 g1; ...        (pairs are attribute object)
//   val q: g1 g2            (extent seed, closed to a concept on load)
ContextFile parse_context_file(const std::string& text);
ContextFile load_context_file(const std::string& path);

}  // namespace ndmu
