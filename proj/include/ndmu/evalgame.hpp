#pragma once

#include <string>
#include <vector>

#include "ndmu/gamecore.hpp"
#include "ndmu/semantics.hpp"

namespace ndmu {

// Evaluation game for a closed hygienic formula over a model. Positions pair
// an object or attribute with a subformula; plays descend through the
// formula and regenerate at fixed-point variables. Priorities: 2*rank for a
// nu-variable, 2*rank+1 for a mu-variable (ranks from the dependency order,
// 1-based), 1 at atom positions, 0 elsewhere, under max-parity semantics.
struct EvalGame {
  GameBoard board;
  std::vector<std::uint32_t> object_start;     // per object index
  std::vector<std::uint32_t> attribute_start;  // per attribute index
};

EvalGame build_eval_game(const Model& m, const FormulaPtr& f);

struct GameVerdict {
  Player winner = Player::Exists;
  std::vector<std::string> play;  // labels of one strategy-guided witness play
  int repeat_index = -1;          // position repeated by the play's last step, -1 if it ended
};

// Winner from the requested start plus a witness play that follows the
// winner's strategy (and first moves for the loser), truncated at the first
// repeated position.
GameVerdict game_check(const Model& m, const FormulaPtr& f, bool attribute_side, int element);

struct AdequacyMismatch {
  bool attribute_side = false;
  int element = 0;
  bool denotational = false;  // forces(g, f), or coforces(m, f) on the attribute side
  Player game_winner = Player::Exists;
};

// Compares the game verdict with the denotational one at every start:
// Exists wins (g, f) exactly when g forces f, and wins (m, f) exactly when
// m does not coforce f. Empty result means the two routes agree.
std::vector<AdequacyMismatch> adequacy_check(const Model& m, const FormulaPtr& f);

}  // namespace ndmu
