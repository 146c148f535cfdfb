#include "ndmu/random.hpp"

namespace ndmu {

namespace {

std::vector<std::string> make_names(const char* prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

Model random_model(std::mt19937_64& rng, const RandomModelParams& params) {
  std::uniform_int_distribution<int> objs(1, params.max_objects);
  std::uniform_int_distribution<int> attrs(1, params.max_attributes);
  std::uniform_int_distribution<int> coin(0, 1);

  int ng = objs(rng);
  int nm = attrs(rng);
  Polarity p(make_names("g", ng), make_names("m", nm));
  for (int g = 0; g < ng; ++g)
    for (int m = 0; m < nm; ++m)
      if (coin(rng)) p.relate(g, m);

  EnrichedContext ctx(p);
  // Random seeds for the relations, then close rows and columns until both
  // directions are Galois-stable.
  std::vector<AttributeSet> box_rows(ng);
  std::vector<ObjectSet> dia_rows(nm);
  for (int g = 0; g < ng; ++g)
    for (int m = 0; m < nm; ++m)
      if (coin(rng)) box_rows[g].insert(m);
  for (int m = 0; m < nm; ++m)
    for (int g = 0; g < ng; ++g)
      if (coin(rng)) dia_rows[m].insert(g);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int g = 0; g < ng; ++g) {
      AttributeSet closed = p.closure_intent(box_rows[g]);
      if (closed != box_rows[g]) {
        box_rows[g] = closed;
        changed = true;
      }
    }
    for (int m = 0; m < nm; ++m) {
      ObjectSet column;
      for (int g = 0; g < ng; ++g)
        if (box_rows[g].contains(m)) column.insert(g);
      ObjectSet closed = p.closure_extent(column);
      if (closed != column) {
        for (int g : closed.minus(column)) box_rows[g].insert(m);
        changed = true;
      }
    }
  }
  changed = true;
  while (changed) {
    changed = false;
    for (int m = 0; m < nm; ++m) {
      ObjectSet closed = p.closure_extent(dia_rows[m]);
      if (closed != dia_rows[m]) {
        dia_rows[m] = closed;
        changed = true;
      }
    }
    for (int g = 0; g < ng; ++g) {
      AttributeSet column;
      for (int m = 0; m < nm; ++m)
        if (dia_rows[m].contains(g)) column.insert(m);
      AttributeSet closed = p.closure_intent(column);
      if (closed != column) {
        for (int m : closed.minus(column)) dia_rows[m].insert(g);
        changed = true;
      }
    }
  }
  for (int g = 0; g < ng; ++g)
    for (int m : box_rows[g]) ctx.add_rbox(g, m);
  for (int m = 0; m < nm; ++m)
    for (int g : dia_rows[m]) ctx.add_rdia(m, g);

  std::uniform_int_distribution<int> natoms(1, params.max_atoms);
  std::vector<std::pair<std::string, ObjectSet>> seeds;
  int atom_count = natoms(rng);
  static const char* names[] = {"p", "q", "r", "s", "t"};
  for (int a = 0; a < atom_count; ++a) {
    ObjectSet seed;
    for (int g = 0; g < ng; ++g)
      if (coin(rng)) seed.insert(g);
    seeds.emplace_back(names[a], seed);
  }
  return make_model(ctx, seeds);
}

namespace {

struct FormulaGen {
  std::mt19937_64& rng;
  const std::vector<std::string>& atoms;
  int binders_left;
  int next_var = 1;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  FormulaPtr leaf(const std::vector<std::pair<std::string, VarSort>>& scope) {
    int choices = static_cast<int>(atoms.size()) + 2 + (scope.empty() ? 0 : 2);
    int c = pick(choices);
    if (c < static_cast<int>(atoms.size())) return Formula::atom(atoms[c]);
    c -= static_cast<int>(atoms.size());
    if (c == 0) return Formula::top();
    if (c == 1) return Formula::bot();
    const auto& v = scope[pick(static_cast<int>(scope.size()))];
    return Formula::var(v.first, v.second);
  }

  FormulaPtr gen(int depth, std::vector<std::pair<std::string, VarSort>>& scope) {
    if (depth <= 0) return leaf(scope);
    int roll = pick(100);
    if (roll < 25) return leaf(scope);
    if (roll < 55) {
      FormulaPtr l = gen(depth - 1, scope);
      FormulaPtr r = gen(depth - 1, scope);
      return pick(2) ? Formula::conj(std::move(l), std::move(r))
                     : Formula::disj(std::move(l), std::move(r));
    }
    if (roll < 80 || binders_left <= 0) {
      FormulaPtr b = gen(depth - 1, scope);
      return pick(2) ? Formula::box(std::move(b)) : Formula::dia(std::move(b));
    }
    --binders_left;
    bool is_nu = pick(2) == 0;
    std::string name = "v" + std::to_string(next_var++);
    scope.emplace_back(name, is_nu ? VarSort::NuBound : VarSort::MuBound);
    FormulaPtr body = gen(depth - 1, scope);
    scope.pop_back();
    return is_nu ? Formula::nu(name, std::move(body)) : Formula::mu(name, std::move(body));
  }
};

}  // namespace

FormulaPtr random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                          int max_depth, int max_binders) {
  FormulaGen gen{rng, atoms, max_binders};
  std::vector<std::pair<std::string, VarSort>> scope;
  return gen.gen(max_depth, scope);
}

}  // namespace ndmu
