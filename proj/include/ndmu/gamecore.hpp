#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ndmu {

enum class Player { Exists, Forall };

inline Player opponent(Player p) { return p == Player::Exists ? Player::Forall : Player::Exists; }
const char* player_name(Player p);  // "exists" / "forall"

// Finite two-player board. A position with no moves is lost by its owner.
struct GamePosition {
  std::string label;
  Player owner = Player::Exists;
  int priority = 0;
  std::vector<std::uint32_t> moves;
};

struct GameBoard {
  std::vector<GamePosition> positions;

  std::uint32_t add(std::string label, Player owner, int priority = 0) {
    positions.push_back({std::move(label), owner, priority, {}});
    return static_cast<std::uint32_t>(positions.size() - 1);
  }
  void add_move(std::uint32_t from, std::uint32_t to) { positions.at(from).moves.push_back(to); }
  std::size_t size() const { return positions.size(); }
};

// Winner per position, plus the chosen move for each position owned by its
// winner (-1 elsewhere). Strategies are positional.
struct Solution {
  std::vector<Player> winner;
  std::vector<std::int64_t> strategy;
};

// Safety game: priorities are ignored and every infinite play is won by
// infinite_winner. Deterministic: attractor processing and strategy choice
// follow position and move order.
Solution solve_safety(const GameBoard& b, Player infinite_winner);

// Max-parity game: an infinite play is won by Exists exactly when the
// highest priority seen infinitely often is even. Zielonka's algorithm with
// deterministic tie-breaking.
Solution solve_parity(const GameBoard& b);

struct Objective {
  enum class Kind { Parity, Safety };
  Kind kind = Kind::Parity;
  Player infinite_winner = Player::Exists;  // Safety only

  static Objective parity() { return {Kind::Parity, Player::Exists}; }
  static Objective safety(Player w) { return {Kind::Safety, w}; }
};

// Validates a claimed solution: legal strategy edges, winners never stuck on
// their own strategy, no move of the losing opponent escapes the winner's
// region, and every cycle the winner's strategy allows satisfies the
// objective. Returns human-readable violations; empty means consistent.
std::vector<std::string> check_strategy(const GameBoard& b, const Solution& s,
                                        Objective obj = Objective::parity());

// One document with positions (id, label, owner, priority, moves) and, when
// a solution is given, winner and strategy_edge per position.
nlohmann::json board_to_json(const GameBoard& b, const Solution* s = nullptr);

}  // namespace ndmu
