#include "ndmu/evalgame.hpp"

#include <deque>
#include <map>
#include <unordered_map>

namespace ndmu {

namespace {

struct Key {
  bool attribute_side;
  int element;
  const Formula* node;

  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<const Formula*>{}(k.node);
    h ^= static_cast<std::size_t>(k.element) * 0x9e3779b97f4a7c15ull;
    return k.attribute_side ? ~h : h;
  }
};

struct Builder {
  const Model& model;
  const Formula& root;
  std::map<std::string, const Formula*> binders;
  DependencyOrder order;
  std::vector<AttributeSet> ic_row;    // per g: I-complement row
  std::vector<ObjectSet> ic_col;       // per m: I-complement column
  std::vector<AttributeSet> boxc_row;  // per g: Rbox-complement row
  std::vector<ObjectSet> diac_row;     // per m: Rdia-complement row

  std::unordered_map<Key, std::uint32_t, KeyHash> ids;
  std::map<const Formula*, std::string> texts;
  GameBoard board;
  std::deque<Key> work;

  explicit Builder(const Model& m, const Formula& f)
      : model(m), root(f), binders(binder_nodes(f)), order(dependency_order(f)) {
    const Polarity& p = m.polarity();
    for (int g = 0; g < p.object_count(); ++g) {
      ic_row.push_back(p.row(g).complement_in(p.attribute_count()));
      boxc_row.push_back(m.ctx.rbox_row[g].complement_in(p.attribute_count()));
    }
    for (int mm = 0; mm < p.attribute_count(); ++mm) {
      ic_col.push_back(p.column(mm).complement_in(p.object_count()));
      diac_row.push_back(m.ctx.rdia_row[mm].complement_in(p.object_count()));
    }
  }

  const std::string& text_of(const Formula* node) {
    auto it = texts.find(node);
    if (it == texts.end()) it = texts.emplace(node, print_formula(*node)).first;
    return it->second;
  }

  std::string label_of(const Key& k) {
    const Polarity& p = model.polarity();
    const std::string& elem =
        k.attribute_side ? p.attribute_name(k.element) : p.object_name(k.element);
    return "(" + elem + ", " + text_of(k.node) + ")";
  }

  int priority_of(const Formula& n) {
    if (n.kind() == FormulaKind::Var)
      return n.var_sort() == VarSort::NuBound ? 2 * order.rank(n.name())
                                              : 2 * order.rank(n.name()) + 1;
    if (n.kind() == FormulaKind::Atom) return 1;
    return 0;
  }

  std::uint32_t id_of(const Key& k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    std::uint32_t v = board.add(label_of(k), Player::Exists, priority_of(*k.node));
    ids.emplace(k, v);
    work.push_back(k);
    return v;
  }

  // Switch-side rows: the stated player chooses an incomparability witness
  // across the incidence complement, keeping the same formula.
  void side_switch_moves(const Key& k, std::vector<Key>& out) {
    if (k.attribute_side) {
      for (int g : ic_col[k.element]) out.push_back({false, g, k.node});
    } else {
      for (int m : ic_row[k.element]) out.push_back({true, m, k.node});
    }
  }

  void expand(const Key& k) {
    const Formula& f = *k.node;
    Player owner = Player::Exists;
    std::vector<Key> moves;
    bool object_side = !k.attribute_side;

    switch (f.kind()) {
      case FormulaKind::Atom: {
        ConceptId c = model.valuation.at(f.name());
        if (object_side) {
          owner = Player::Forall;
          if (!model.lattice[c].extent.contains(k.element)) side_switch_moves(k, moves);
        } else {
          owner = Player::Exists;
          if (!model.lattice[c].intent.contains(k.element)) side_switch_moves(k, moves);
        }
        break;
      }
      case FormulaKind::Top:
        owner = object_side ? Player::Forall : Player::Exists;
        if (!object_side) side_switch_moves(k, moves);
        break;
      case FormulaKind::Bot:
        owner = object_side ? Player::Forall : Player::Exists;
        if (object_side) side_switch_moves(k, moves);
        break;
      case FormulaKind::Or:
        if (!object_side) {
          owner = Player::Exists;
          moves.push_back({true, k.element, f.lhs().get()});
          moves.push_back({true, k.element, f.rhs().get()});
        } else {
          owner = Player::Forall;
          side_switch_moves(k, moves);
        }
        break;
      case FormulaKind::And:
        if (object_side) {
          owner = Player::Forall;
          moves.push_back({false, k.element, f.lhs().get()});
          moves.push_back({false, k.element, f.rhs().get()});
        } else {
          owner = Player::Exists;
          side_switch_moves(k, moves);
        }
        break;
      case FormulaKind::Dia:
        if (!object_side) {
          owner = Player::Exists;
          for (int g : diac_row[k.element]) moves.push_back({false, g, f.body().get()});
        } else {
          owner = Player::Forall;
          side_switch_moves(k, moves);
        }
        break;
      case FormulaKind::Box:
        if (object_side) {
          owner = Player::Forall;
          for (int m : boxc_row[k.element]) moves.push_back({true, m, f.body().get()});
        } else {
          owner = Player::Exists;
          side_switch_moves(k, moves);
        }
        break;
      case FormulaKind::Nu:
        // Automatic step into the body on the object side.
        if (object_side) {
          owner = Player::Exists;
          moves.push_back({false, k.element, f.body().get()});
        } else {
          owner = Player::Exists;
          side_switch_moves(k, moves);
        }
        break;
      case FormulaKind::Mu:
        // Automatic step into the body on the attribute side.
        if (!object_side) {
          owner = Player::Exists;
          moves.push_back({true, k.element, f.body().get()});
        } else {
          owner = Player::Forall;
          side_switch_moves(k, moves);
        }
        break;
      case FormulaKind::Var: {
        const Formula* binder = binders.at(f.name());
        bool is_nu = f.var_sort() == VarSort::NuBound;
        if (is_nu) {
          // Regenerates at the binder on the object side.
          if (object_side) {
            owner = Player::Exists;
            moves.push_back({false, k.element, binder});
          } else {
            owner = Player::Exists;
            side_switch_moves(k, moves);
          }
        } else {
          // Regenerates at the binder on the attribute side.
          if (!object_side) {
            owner = Player::Exists;
            moves.push_back({true, k.element, binder});
          } else {
            owner = Player::Forall;
            side_switch_moves(k, moves);
          }
        }
        break;
      }
    }

    std::uint32_t v = ids.at(k);
    board.positions[v].owner = owner;
    for (const Key& t : moves) board.add_move(v, id_of(t));
  }
};

}  // namespace

EvalGame build_eval_game(const Model& m, const FormulaPtr& f) {
  if (!is_hygienic(*f))
    throw std::invalid_argument("formula is not hygienic; apply rename_apart first");
  std::vector<std::string> unbound = unbound_variables(*f);
  if (!unbound.empty())
    throw std::invalid_argument("formula has unbound variables; first is '" + unbound[0] + "'");
  for (const std::string& a : atom_names(*f))
    if (!m.valuation.count(a))
      throw std::invalid_argument("atom '" + a + "' has no valuation in the model");

  Builder b(m, *f);
  EvalGame game;
  const Polarity& p = m.polarity();
  for (int g = 0; g < p.object_count(); ++g)
    game.object_start.push_back(b.id_of({false, g, f.get()}));
  for (int mm = 0; mm < p.attribute_count(); ++mm)
    game.attribute_start.push_back(b.id_of({true, mm, f.get()}));
  while (!b.work.empty()) {
    Key k = b.work.front();
    b.work.pop_front();
    b.expand(k);
  }
  game.board = std::move(b.board);
  return game;
}

GameVerdict game_check(const Model& m, const FormulaPtr& f, bool attribute_side, int element) {
  EvalGame game = build_eval_game(m, f);
  Solution sol = solve_parity(game.board);
  std::uint32_t start =
      attribute_side ? game.attribute_start.at(element) : game.object_start.at(element);

  GameVerdict verdict;
  verdict.winner = sol.winner[start];

  std::map<std::uint32_t, int> seen;
  std::uint32_t v = start;
  while (true) {
    auto it = seen.find(v);
    if (it != seen.end()) {
      verdict.play.push_back(game.board.positions[v].label);
      verdict.repeat_index = it->second;
      break;
    }
    seen[v] = static_cast<int>(verdict.play.size());
    verdict.play.push_back(game.board.positions[v].label);
    const GamePosition& pos = game.board.positions[v];
    if (pos.moves.empty()) break;
    if (pos.owner == sol.winner[v] && sol.strategy[v] >= 0)
      v = static_cast<std::uint32_t>(sol.strategy[v]);
    else
      v = pos.moves.front();
  }
  return verdict;
}

std::vector<AdequacyMismatch> adequacy_check(const Model& m, const FormulaPtr& f) {
  EvalGame game = build_eval_game(m, f);
  Solution sol = solve_parity(game.board);
  std::vector<AdequacyMismatch> out;
  const Polarity& p = m.polarity();
  for (int g = 0; g < p.object_count(); ++g) {
    bool den = forces(m, g, *f);
    Player w = sol.winner[game.object_start[g]];
    if (den != (w == Player::Exists)) out.push_back({false, g, den, w});
  }
  for (int mm = 0; mm < p.attribute_count(); ++mm) {
    bool den = coforces(m, mm, *f);
    Player w = sol.winner[game.attribute_start[mm]];
    if (!den != (w == Player::Exists)) out.push_back({true, mm, den, w});
  }
  return out;
}

}  // namespace ndmu
