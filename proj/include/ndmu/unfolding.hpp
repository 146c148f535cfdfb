#pragma once

#include <functional>

#include "ndmu/gamecore.hpp"
#include "ndmu/semantics.hpp"

namespace ndmu {

// Unfolding games compute extremal fixed points of a monotone map f on a
// concept lattice by playing over its generators.
//
// Join variant: Exists owns generator positions and answers a generator j
// with a set S of generators such that j <= f(join S); Forall owns set
// positions and picks an element of S. Meet variant is the mirror image:
// Forall owns generator positions and answers m with a set S such that
// f(meet S) <= m; Exists picks from S. A player who cannot move loses, and
// the infinite-play winner is a parameter. Winning is judged at generator
// positions for their owner (Exists in Join games, Forall in Meet games):
//
//   Join  + infinite plays to Exists: join of winning generators = gfp(f)
//   Join  + infinite plays to Forall: join of winning generators = lfp(f)
//   Meet  + infinite plays to Forall: meet of winning generators = lfp(f)
//   Meet  + infinite plays to Exists: meet of winning generators = gfp(f)
//
// The alternative variant replaces Exists's set move with a single lattice
// element u with j <= f(u), Forall answering with any generator below u;
// infinite plays go to Forall. On the finite lattices handled here its
// Exists-winning generators join to lfp(f); that equality is specific to
// the finite case (see tools/gprime_chain_demo.cpp for how the coincidence
// plays out along finite truncations of an infinite chain).

using LatticeMap = std::function<ConceptId(ConceptId)>;

enum class GeneratorKind { Join, Meet };

// Distinct object concepts (join generators) or attribute concepts (meet
// generators), in lattice id order. Bottom is dropped from the join family
// and top from the meet family: each is the empty join/meet, so generation
// is unaffected, and the single-element unfolding boards need the challenger
// to get stuck there rather than loop on a trivial claim.
std::vector<ConceptId> join_generators(const ConceptLattice& lat);
std::vector<ConceptId> meet_generators(const ConceptLattice& lat);

// Defensive check used by the solvers: exhaustive on small lattices, a
// deterministic sample on larger ones. Throws when a violation is found.
void require_monotone(const ConceptLattice& lat, const LatticeMap& f);

struct UnfoldOutcome {
  std::vector<ConceptId> winning;  // generators won by the generator-side owner
  ConceptId fixpoint;              // their join (Join games) or meet (Meet games)
};

// Computes the winning generators without materializing set positions, by
// iterating the one-step viability operator from everything (when the
// generator owner also wins infinite plays) or from nothing (otherwise).
UnfoldOutcome solve_unfolding_symbolic(const ConceptLattice& lat, const LatticeMap& f,
                                       GeneratorKind kind, Player infinite_winner);

struct UnfoldBoard {
  GameBoard board;
  GeneratorKind kind = GeneratorKind::Join;
  std::vector<ConceptId> generators;
  std::vector<std::uint32_t> generator_position;
};

// Explicit board with one position per generator and one per generator set.
// Exponential in the generator count, so bounded.
UnfoldBoard build_unfolding_board(const ConceptLattice& lat, const LatticeMap& f,
                                  GeneratorKind kind, std::size_t max_generators = 12);
UnfoldOutcome solve_unfolding_board(const ConceptLattice& lat, const UnfoldBoard& ub,
                                    Player infinite_winner);

// Alternative variant over join generators and single lattice elements.
UnfoldBoard build_gprime_board(const ConceptLattice& lat, const LatticeMap& f);
UnfoldOutcome solve_gprime(const ConceptLattice& lat, const LatticeMap& f);

// Map induced by a formula body with one designated variable; other
// identifiers must be atoms of the model. The model must outlive the map.
LatticeMap formula_map(const Model& m, const FormulaPtr& body, const std::string& var);

}  // namespace ndmu
