#pragma once

#include <random>
#include <vector>

#include "ndmu/semantics.hpp"

namespace ndmu {

struct RandomModelParams {
  int max_objects = 4;
  int max_attributes = 4;
  int max_atoms = 3;
};

// Random context with compatible relations: Rbox and Rdia start from random
// bits and are closed by repeatedly replacing each row and column with its
// Galois closure (closure only adds pairs, so this terminates). Valuation
// seeds are closed to concepts.
Model random_model(std::mt19937_64& rng, const RandomModelParams& params = {});

// Random closed hygienic formula over the given atoms, with bounded depth
// and fixed-point binder count. Bound variables are named v1, v2, ...
FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                          int max_depth = 4, int max_binders = 2);

}  // namespace ndmu
