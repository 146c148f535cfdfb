#include "ndmu/unfolding.hpp"

#include <algorithm>
#include <set>

namespace ndmu {

namespace {

std::vector<ConceptId> dedup(std::vector<ConceptId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<ConceptId> join_generators(const ConceptLattice& lat) {
  std::vector<ConceptId> out;
  for (int g = 0; g < lat.polarity().object_count(); ++g) {
    ConceptId c = lat.object_concept(g);
    if (c != lat.bottom()) out.push_back(c);
  }
  return dedup(std::move(out));
}

std::vector<ConceptId> meet_generators(const ConceptLattice& lat) {
  std::vector<ConceptId> out;
  for (int m = 0; m < lat.polarity().attribute_count(); ++m) {
    ConceptId c = lat.attribute_concept(m);
    if (c != lat.top()) out.push_back(c);
  }
  return dedup(std::move(out));
}

void require_monotone(const ConceptLattice& lat, const LatticeMap& f) {
  std::size_t n = lat.size();
  auto report = [&](ConceptId a, ConceptId b) {
    throw std::invalid_argument("map is not monotone: " + lat.to_string(a) + " <= " +
                                lat.to_string(b) + " but the images are not ordered");
  };
  if (n <= 64) {
    std::vector<ConceptId> img(n);
    for (ConceptId c = 0; c < n; ++c) img[c] = f(c);
    for (ConceptId a = 0; a < n; ++a)
      for (ConceptId b = 0; b < n; ++b)
        if (lat.leq(a, b) && !lat.leq(img[a], img[b])) report(a, b);
    return;
  }
  std::uint64_t state = 0x2545f4914f6cdd1dull;
  auto next = [&state] {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int i = 0; i < 512; ++i) {
    ConceptId a = static_cast<ConceptId>(next() % n);
    ConceptId b = static_cast<ConceptId>(next() % n);
    ConceptId lo = lat.meet(a, b);
    if (!lat.leq(f(lo), f(a))) report(lo, a);
    if (!lat.leq(f(lo), f(b))) report(lo, b);
  }
}

UnfoldOutcome solve_unfolding_symbolic(const ConceptLattice& lat, const LatticeMap& f,
                                       GeneratorKind kind, Player infinite_winner) {
  require_monotone(lat, f);
  std::vector<ConceptId> gens =
      kind == GeneratorKind::Join ? join_generators(lat) : meet_generators(lat);
  Player gen_owner = kind == GeneratorKind::Join ? Player::Exists : Player::Forall;
  bool from_everything = infinite_winner == gen_owner;

  std::vector<char> w(gens.size(), from_everything ? 1 : 0);
  for (std::size_t step = 0; step <= gens.size() + 1; ++step) {
    std::vector<ConceptId> members;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (w[i]) members.push_back(gens[i]);
    ConceptId agg = kind == GeneratorKind::Join ? lat.join_all(members) : lat.meet_all(members);
    ConceptId fagg = f(agg);
    std::vector<char> next(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
      next[i] = kind == GeneratorKind::Join ? lat.leq(gens[i], fagg) : lat.leq(fagg, gens[i]);
    if (next == w) {
      UnfoldOutcome out;
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (w[i]) out.winning.push_back(gens[i]);
      out.fixpoint = agg;
      return out;
    }
    w = std::move(next);
  }
  throw std::logic_error("unfolding iteration did not stabilize");
}

UnfoldBoard build_unfolding_board(const ConceptLattice& lat, const LatticeMap& f,
                                  GeneratorKind kind, std::size_t max_generators) {
  require_monotone(lat, f);
  UnfoldBoard ub;
  ub.kind = kind;
  ub.generators = kind == GeneratorKind::Join ? join_generators(lat) : meet_generators(lat);
  std::size_t k = ub.generators.size();
  if (k > max_generators)
    throw std::invalid_argument("generator count " + std::to_string(k) + " exceeds the bound of " +
                                std::to_string(max_generators));

  bool join = kind == GeneratorKind::Join;
  Player gen_owner = join ? Player::Exists : Player::Forall;

  std::size_t subsets = std::size_t{1} << k;
  std::vector<ConceptId> agg(subsets);
  agg[0] = join ? lat.bottom() : lat.top();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    int low = std::countr_zero(mask);
    ConceptId rest = agg[mask & (mask - 1)];
    agg[mask] =
        join ? lat.join(rest, ub.generators[low]) : lat.meet(rest, ub.generators[low]);
  }
  std::vector<ConceptId> fval(subsets);
  for (std::size_t mask = 0; mask < subsets; ++mask) fval[mask] = f(agg[mask]);

  for (std::size_t i = 0; i < k; ++i)
    ub.generator_position.push_back(ub.board.add(lat.to_string(ub.generators[i]), gen_owner));
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::string label = "{";
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) label += (label.size() > 1 ? " j" : "j") + std::to_string(i);
    label += "}";
    ub.board.add(std::move(label), opponent(gen_owner));
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      bool viable = join ? lat.leq(ub.generators[i], fval[mask]) : lat.leq(fval[mask], ub.generators[i]);
      if (viable) ub.board.add_move(ub.generator_position[i], static_cast<std::uint32_t>(k + mask));
    }
  }
  for (std::size_t mask = 0; mask < subsets; ++mask)
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u)
        ub.board.add_move(static_cast<std::uint32_t>(k + mask), ub.generator_position[i]);
  return ub;
}

UnfoldOutcome solve_unfolding_board(const ConceptLattice& lat, const UnfoldBoard& ub,
                                    Player infinite_winner) {
  Solution sol = solve_safety(ub.board, infinite_winner);
  Player gen_owner = ub.kind == GeneratorKind::Join ? Player::Exists : Player::Forall;
  UnfoldOutcome out;
  std::vector<ConceptId> members;
  for (std::size_t i = 0; i < ub.generators.size(); ++i)
    if (sol.winner[ub.generator_position[i]] == gen_owner) members.push_back(ub.generators[i]);
  out.winning = members;
  out.fixpoint =
      ub.kind == GeneratorKind::Join ? lat.join_all(members) : lat.meet_all(members);
  return out;
}

UnfoldBoard build_gprime_board(const ConceptLattice& lat, const LatticeMap& f) {
  require_monotone(lat, f);
  UnfoldBoard ub;
  ub.kind = GeneratorKind::Join;
  ub.generators = join_generators(lat);
  std::size_t k = ub.generators.size();

  std::vector<ConceptId> img(lat.size());
  for (ConceptId u = 0; u < lat.size(); ++u) img[u] = f(u);

  for (std::size_t i = 0; i < k; ++i)
    ub.generator_position.push_back(ub.board.add(lat.to_string(ub.generators[i]), Player::Exists));
  for (ConceptId u = 0; u < lat.size(); ++u)
    ub.board.add("elem " + lat.to_string(u), Player::Forall);

  for (std::size_t i = 0; i < k; ++i)
    for (ConceptId u = 0; u < lat.size(); ++u)
      if (lat.leq(ub.generators[i], img[u]))
        ub.board.add_move(ub.generator_position[i], static_cast<std::uint32_t>(k + u));
  for (ConceptId u = 0; u < lat.size(); ++u)
    for (std::size_t i = 0; i < k; ++i)
      if (lat.leq(ub.generators[i], u))
        ub.board.add_move(static_cast<std::uint32_t>(k + u), ub.generator_position[i]);
  return ub;
}

UnfoldOutcome solve_gprime(const ConceptLattice& lat, const LatticeMap& f) {
  UnfoldBoard ub = build_gprime_board(lat, f);
  Solution sol = solve_safety(ub.board, Player::Forall);
  UnfoldOutcome out;
  std::vector<ConceptId> members;
  for (std::size_t i = 0; i < ub.generators.size(); ++i)
    if (sol.winner[ub.generator_position[i]] == Player::Exists) members.push_back(ub.generators[i]);
  out.winning = members;
  out.fixpoint = lat.join_all(members);
  return out;
}

LatticeMap formula_map(const Model& m, const FormulaPtr& body, const std::string& var) {
  if (!is_hygienic(*body))
    throw std::invalid_argument("map body is not hygienic; apply rename_apart first");
  if (m.valuation.count(var))
    throw std::invalid_argument("'" + var + "' already names an atom of the model");
  for (const std::string& a : atom_names(*body))
    if (a != var && !m.valuation.count(a))
      throw std::invalid_argument("atom '" + a + "' has no valuation in the model");
  for (const std::string& v : unbound_variables(*body))
    if (v != var)
      throw std::invalid_argument("map body has a second unbound variable '" + v + "'");

  const Model* model = &m;
  return [model, body, var](ConceptId c) {
    Environment env{{var, c}};
    return evaluate(*model, *body, env);
  };
}

}  // namespace ndmu
