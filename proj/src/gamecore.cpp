#include "ndmu/gamecore.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ndmu {

const char* player_name(Player p) { return p == Player::Exists ? "exists" : "forall"; }

namespace {

struct Graph {
  std::vector<Player> owner;
  std::vector<int> priority;
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<std::vector<std::uint32_t>> pred;

  std::size_t size() const { return owner.size(); }

  void build_pred() {
    pred.assign(size(), {});
    for (std::uint32_t v = 0; v < size(); ++v)
      for (std::uint32_t w : succ[v]) pred[w].push_back(v);
  }
};

// Grows in_attr to the attractor of `player` within `alive`: player-owned
// positions with a move into the set, opponent-owned positions with every
// alive move into it. Records the first such move for attracted player-owned
// positions. Deterministic given position and move order.
void attract(const Graph& g, Player player, const std::vector<char>& alive,
             std::vector<char>& in_attr, std::vector<std::int64_t>& strat) {
  std::vector<int> out(g.size(), 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    if (!alive[v]) continue;
    if (in_attr[v]) queue.push_back(v);
    int alive_moves = 0;
    for (std::uint32_t w : g.succ[v])
      if (alive[w]) ++alive_moves;
    out[v] = alive_moves;
  }
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t u : g.pred[v]) {
      if (!alive[u] || in_attr[u]) continue;
      if (g.owner[u] == player) {
        // Pick the witness move before marking u, so a self-loop on u cannot
        // masquerade as a move into the attractor.
        for (std::uint32_t w : g.succ[u]) {
          if (alive[w] && in_attr[w]) {
            strat[u] = w;
            break;
          }
        }
        in_attr[u] = 1;
        queue.push_back(u);
      } else if (--out[u] == 0) {
        in_attr[u] = 1;
        queue.push_back(u);
      }
    }
  }
}

Graph graph_of(const GameBoard& b) {
  Graph g;
  g.owner.reserve(b.size());
  g.priority.reserve(b.size());
  g.succ.reserve(b.size());
  for (const GamePosition& p : b.positions) {
    g.owner.push_back(p.owner);
    g.priority.push_back(p.priority);
    g.succ.push_back(p.moves);
  }
  return g;
}

void zielonka(const Graph& g, std::vector<char> mask, std::vector<Player>& winner,
              std::vector<std::int64_t>& strat) {
  int d = -1;
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (mask[v]) d = std::max(d, g.priority[v]);
  if (d < 0) return;

  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (mask[v]) strat[v] = -1;

  Player p = d % 2 == 0 ? Player::Exists : Player::Forall;
  Player o = opponent(p);

  std::vector<char> a(g.size(), 0);
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (mask[v] && g.priority[v] == d) a[v] = 1;
  std::vector<std::int64_t> astrat(g.size(), -1);
  attract(g, p, mask, a, astrat);

  std::vector<char> sub = mask;
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (a[v]) sub[v] = 0;
  zielonka(g, sub, winner, strat);

  bool opponent_region_empty = true;
  for (std::uint32_t v = 0; v < g.size() && opponent_region_empty; ++v)
    if (sub[v] && winner[v] == o) opponent_region_empty = false;

  if (opponent_region_empty) {
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      if (!a[v]) continue;
      winner[v] = p;
      if (g.owner[v] != p) continue;
      if (astrat[v] >= 0) {
        strat[v] = astrat[v];
      } else {
        for (std::uint32_t w : g.succ[v]) {
          if (mask[w]) {
            strat[v] = w;
            break;
          }
        }
      }
    }
    return;
  }

  std::vector<char> b(g.size(), 0);
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (sub[v] && winner[v] == o) b[v] = 1;
  std::vector<char> b_core = b;
  std::vector<std::int64_t> bstrat(g.size(), -1);
  attract(g, o, mask, b, bstrat);

  std::vector<char> rest = mask;
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (b[v]) rest[v] = 0;
  zielonka(g, rest, winner, strat);

  // The opponent keeps the recursive strategy inside its region and attracts
  // toward it from the rest of b.
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    if (!b[v] || b_core[v]) continue;
    winner[v] = o;
    strat[v] = g.owner[v] == o ? bstrat[v] : -1;
  }
}

}  // namespace

Solution solve_safety(const GameBoard& b, Player infinite_winner) {
  Graph g = graph_of(b);
  g.build_pred();
  Player finisher = opponent(infinite_winner);

  std::vector<char> alive(g.size(), 1);
  std::vector<char> won_by_finisher(g.size(), 0);
  Solution s{std::vector<Player>(g.size(), infinite_winner),
             std::vector<std::int64_t>(g.size(), -1)};
  for (std::uint32_t v = 0; v < g.size(); ++v)
    if (g.owner[v] == infinite_winner && g.succ[v].empty()) won_by_finisher[v] = 1;
  attract(g, finisher, alive, won_by_finisher, s.strategy);

  for (std::uint32_t v = 0; v < g.size(); ++v) {
    if (won_by_finisher[v]) {
      s.winner[v] = finisher;
      if (g.owner[v] != finisher) s.strategy[v] = -1;
    } else if (g.owner[v] == infinite_winner) {
      for (std::uint32_t w : g.succ[v]) {
        if (!won_by_finisher[w]) {
          s.strategy[v] = w;
          break;
        }
      }
    }
  }
  return s;
}

Solution solve_parity(const GameBoard& b) {
  std::size_t n = b.size();
  Graph g = graph_of(b);

  // Two absorbing sinks make the graph total: a stuck player is sent to the
  // sink whose self-loop parity hands the win to the opponent.
  std::uint32_t sink_exists_wins = static_cast<std::uint32_t>(n);
  std::uint32_t sink_forall_wins = static_cast<std::uint32_t>(n + 1);
  g.owner.push_back(Player::Forall);
  g.priority.push_back(0);
  g.succ.push_back({sink_exists_wins});
  g.owner.push_back(Player::Exists);
  g.priority.push_back(1);
  g.succ.push_back({sink_forall_wins});
  for (std::uint32_t v = 0; v < n; ++v)
    if (g.succ[v].empty())
      g.succ[v].push_back(g.owner[v] == Player::Exists ? sink_forall_wins : sink_exists_wins);
  g.build_pred();

  std::vector<Player> winner(g.size(), Player::Exists);
  std::vector<std::int64_t> strat(g.size(), -1);
  zielonka(g, std::vector<char>(g.size(), 1), winner, strat);

  Solution s{std::vector<Player>(winner.begin(), winner.begin() + n),
             std::vector<std::int64_t>(strat.begin(), strat.begin() + n)};
  for (std::uint32_t v = 0; v < n; ++v)
    if (s.strategy[v] >= static_cast<std::int64_t>(n)) s.strategy[v] = -1;
  return s;
}

namespace {

// Strongly connected components (Tarjan, iterative). Returns component ids;
// a component "has a cycle" when it has more than one node or a self-loop.
struct SccResult {
  std::vector<int> comp;
  std::vector<char> cyclic;
};

SccResult scc(const std::vector<std::vector<std::uint32_t>>& adj) {
  std::size_t n = adj.size();
  SccResult res{std::vector<int>(n, -1), {}};
  std::vector<int> low(n, 0), num(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  int counter = 0;

  struct Frame {
    std::uint32_t v;
    std::size_t next_edge;
  };
  for (std::uint32_t root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < adj[f.v].size()) {
        std::uint32_t w = adj[f.v][f.next_edge++];
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], num[w]);
        }
      } else {
        std::uint32_t v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == num[v]) {
          int id = static_cast<int>(res.cyclic.size());
          std::size_t members = 0;
          while (true) {
            std::uint32_t w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            res.comp[w] = id;
            ++members;
            if (w == v) break;
          }
          bool cyc = members > 1;
          res.cyclic.push_back(cyc ? 1 : 0);
        }
      }
    }
  }
  // Self-loops make a singleton component cyclic.
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t w : adj[v])
      if (w == v) res.cyclic[res.comp[v]] = 1;
  return res;
}

}  // namespace

std::vector<std::string> check_strategy(const GameBoard& b, const Solution& s, Objective obj) {
  std::vector<std::string> out;
  std::size_t n = b.size();
  if (s.winner.size() != n || s.strategy.size() != n) {
    out.push_back("solution arrays do not match the board size");
    return out;
  }

  auto label = [&](std::uint32_t v) {
    return "position " + std::to_string(v) + " (" + b.positions[v].label + ")";
  };
  auto legal = [&](std::uint32_t v) {
    const auto& moves = b.positions[v].moves;
    return s.strategy[v] >= 0 &&
           std::find(moves.begin(), moves.end(), static_cast<std::uint32_t>(s.strategy[v])) !=
               moves.end();
  };

  for (std::uint32_t v = 0; v < n; ++v) {
    const GamePosition& pos = b.positions[v];
    if (s.winner[v] == pos.owner) {
      if (pos.moves.empty()) {
        out.push_back(label(v) + " is claimed for its owner, who is stuck there");
      } else if (s.strategy[v] < 0) {
        out.push_back(label(v) + " is missing a strategy edge for its winner");
      } else if (!legal(v)) {
        out.push_back(label(v) + " has a strategy edge that is not a legal move");
      } else if (s.winner[s.strategy[v]] != s.winner[v]) {
        out.push_back(label(v) + " has a strategy edge leaving the winning region");
      }
    } else {
      if (s.strategy[v] >= 0)
        out.push_back(label(v) + " has a strategy edge but is not owned by its winner");
      for (std::uint32_t w : pos.moves)
        if (s.winner[w] != s.winner[v]) {
          out.push_back(label(v) + " lets the loser escape to position " + std::to_string(w));
          break;
        }
    }
  }

  // Cycle analysis of the strategy-restricted regions.
  for (Player p : {Player::Exists, Player::Forall}) {
    std::vector<std::vector<std::uint32_t>> adj(n);
    bool region_empty = true;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (s.winner[v] != p) continue;
      region_empty = false;
      if (b.positions[v].owner == p) {
        if (legal(v) && s.winner[s.strategy[v]] == p)
          adj[v].push_back(static_cast<std::uint32_t>(s.strategy[v]));
      } else {
        for (std::uint32_t w : b.positions[v].moves)
          if (s.winner[w] == p) adj[v].push_back(w);
      }
    }
    if (region_empty) continue;

    if (obj.kind == Objective::Kind::Safety) {
      if (p == obj.infinite_winner) continue;
      SccResult r = scc(adj);
      for (std::uint32_t v = 0; v < n; ++v)
        if (s.winner[v] == p && r.cyclic[r.comp[v]]) {
          out.push_back("region of " + std::string(player_name(p)) +
                        " admits an infinite play through " + label(v) +
                        ", but infinite plays are won by " + player_name(obj.infinite_winner));
          break;
        }
      continue;
    }

    // Parity: no cycle reachable under p's strategy may have its maximum
    // priority of the opponent's parity.
    int want = p == Player::Exists ? 0 : 1;
    int max_prio = 0;
    for (std::uint32_t v = 0; v < n; ++v)
      if (s.winner[v] == p) max_prio = std::max(max_prio, b.positions[v].priority);
    for (int bad = 0; bad <= max_prio; ++bad) {
      if (bad % 2 == want) continue;
      std::vector<std::vector<std::uint32_t>> restricted(n);
      for (std::uint32_t v = 0; v < n; ++v) {
        if (s.winner[v] != p || b.positions[v].priority > bad) continue;
        for (std::uint32_t w : adj[v])
          if (b.positions[w].priority <= bad) restricted[v].push_back(w);
      }
      SccResult r = scc(restricted);
      bool reported = false;
      for (std::uint32_t v = 0; v < n && !reported; ++v) {
        if (s.winner[v] != p || b.positions[v].priority != bad) continue;
        if (r.cyclic[r.comp[v]]) {
          out.push_back("region of " + std::string(player_name(p)) +
                        " admits a cycle whose maximum priority " + std::to_string(bad) +
                        " favours the opponent, through " + label(v));
          reported = true;
        }
      }
    }
  }
  return out;
}

nlohmann::json board_to_json(const GameBoard& b, const Solution* s) {
  nlohmann::json positions = nlohmann::json::array();
  for (std::uint32_t v = 0; v < b.size(); ++v) {
    const GamePosition& p = b.positions[v];
    nlohmann::json j{{"id", v},
                     {"label", p.label},
                     {"owner", player_name(p.owner)},
                     {"priority", p.priority},
                     {"moves", p.moves}};
    if (s) {
      j["winner"] = player_name(s->winner.at(v));
      if (s->strategy.at(v) >= 0)
        j["strategy_edge"] = s->strategy.at(v);
      else
        j["strategy_edge"] = nullptr;
    }
    positions.push_back(std::move(j));
  }
  return nlohmann::json{{"positions", std::move(positions)}};
}

}  // namespace ndmu
