#pragma once

#include <string>
#include <vector>

#include "ndmu/semantics.hpp"

namespace ndmu {

// Directed simulation from a first model to a second: an object relation S
// (per first-model object, the related second-model objects) and an
// attribute relation T. Conditions, checked pairwise:
//   1. g1 S g2 and g1 in an atom's extent in 1  => g2 in its extent in 2
//   2. m1 T m2 and m2 in an atom's intent in 2  => m1 in its intent in 1
//   3. g1 S g2, g2 I2^c m2    => some m1 with g1 I1^c m1 and m1 T m2
//   4. m1 T m2, g1 I1^c m1    => some g2 with g2 I2^c m2 and g1 S g2
//   5. g1 S g2, g2 Rbox2^c m2 => some m1 with g1 Rbox1^c m1 and m1 T m2
//   6. m1 T m2, m1 Rdia1^c g1 => some g2 with m2 Rdia2^c g2 and g1 S g2
struct SimulationPair {
  std::vector<ObjectSet> s;     // indexed by first-model object
  std::vector<AttributeSet> t;  // indexed by first-model attribute
};

struct SimViolation {
  int condition = 0;  // 1..6
  std::string detail;
};

// Both models must interpret the same atoms.
std::vector<SimViolation> check_simulation(const Model& m1, const Model& m2,
                                           const SimulationPair& pair);

// Greatest simulation contained in seed, by deleting violating pairs until
// stable. The result is independent of deletion order.
SimulationPair largest_simulation_within(const Model& m1, const Model& m2,
                                         const SimulationPair& seed);
SimulationPair largest_simulation(const Model& m1, const Model& m2);

// Related by some simulation in each direction.
bool bisimilar_objects(const Model& m1, const Model& m2, int g1, int g2);
bool bisimilar_attributes(const Model& m1, const Model& m2, int a1, int a2);

struct InvarianceFailure {
  std::string formula;
  bool attribute_side = false;
  int left_element = 0;   // first-model index
  int right_element = 0;  // second-model index
};

// For a valid simulation, forcing transfers along S and co-forcing transfers
// backwards along T; returns every corpus formula and pair where the
// transfer fails. Formulas must be hygienic and closed.
std::vector<InvarianceFailure> invariance_test(const Model& m1, const Model& m2,
                                               const SimulationPair& pair,
                                               const std::vector<FormulaPtr>& corpus);

// Pair file format, '#' comments allowed, sections may repeat:
//   S: g1 g2; g1 g3
//   T: m1 m2
SimulationPair parse_pair_file(const std::string& text, const Model& m1, const Model& m2);
SimulationPair load_pair_file(const std::string& path, const Model& m1, const Model& m2);

}  // namespace ndmu
