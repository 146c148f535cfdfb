#include "ndmu/bisim.hpp"

#include <fstream>
#include <sstream>

namespace ndmu {

namespace {

struct Sides {
  const Model& m1;
  const Model& m2;
  std::vector<AttributeSet> ic1_row, boxc1_row;  // per g1, over M1
  std::vector<ObjectSet> ic2_col;                // per m2, over G2
  std::vector<AttributeSet> ic2_row, boxc2_row;  // per g2, over M2
  std::vector<ObjectSet> ic1_col;                // per m1, over G1
  std::vector<ObjectSet> diac1_row;              // per m1, over G1
  std::vector<ObjectSet> diac2_row;              // per m2, over G2

  Sides(const Model& a, const Model& b) : m1(a), m2(b) {
    const Polarity& p1 = a.polarity();
    const Polarity& p2 = b.polarity();
    for (int g = 0; g < p1.object_count(); ++g) {
      ic1_row.push_back(p1.row(g).complement_in(p1.attribute_count()));
      boxc1_row.push_back(a.ctx.rbox_row[g].complement_in(p1.attribute_count()));
    }
    for (int m = 0; m < p1.attribute_count(); ++m) {
      ic1_col.push_back(p1.column(m).complement_in(p1.object_count()));
      diac1_row.push_back(a.ctx.rdia_row[m].complement_in(p1.object_count()));
    }
    for (int g = 0; g < p2.object_count(); ++g) {
      ic2_row.push_back(p2.row(g).complement_in(p2.attribute_count()));
      boxc2_row.push_back(b.ctx.rbox_row[g].complement_in(p2.attribute_count()));
    }
    for (int m = 0; m < p2.attribute_count(); ++m) {
      ic2_col.push_back(p2.column(m).complement_in(p2.object_count()));
      diac2_row.push_back(b.ctx.rdia_row[m].complement_in(p2.object_count()));
    }
  }

  // t restricted to pairs ending at m2, as a set over first-model attributes.
  AttributeSet t_into(const SimulationPair& pair, int m2) const {
    AttributeSet out;
    for (int m = 0; m < m1.polarity().attribute_count(); ++m)
      if (pair.t[m].contains(m2)) out.insert(m);
    return out;
  }

  bool cond3(const SimulationPair& pair, int g1, int g2) const {
    for (int m2 : ic2_row[g2])
      if (!(ic1_row[g1] & t_into(pair, m2)).any()) return false;
    return true;
  }
  bool cond5(const SimulationPair& pair, int g1, int g2) const {
    for (int m2 : boxc2_row[g2])
      if (!(boxc1_row[g1] & t_into(pair, m2)).any()) return false;
    return true;
  }
  bool cond4(const SimulationPair& pair, int m1i, int m2i) const {
    for (int g1 : ic1_col[m1i])
      if (!(pair.s[g1] & ic2_col[m2i]).any()) return false;
    return true;
  }
  bool cond6(const SimulationPair& pair, int m1i, int m2i) const {
    for (int g1 : diac1_row[m1i])
      if (!(pair.s[g1] & diac2_row[m2i]).any()) return false;
    return true;
  }
};

void require_shared_vocabulary(const Model& m1, const Model& m2) {
  for (const auto& [name, c] : m1.valuation)
    if (!m2.valuation.count(name))
      throw std::invalid_argument("atom '" + name + "' is missing from the second model");
  for (const auto& [name, c] : m2.valuation)
    if (!m1.valuation.count(name))
      throw std::invalid_argument("atom '" + name + "' is missing from the first model");
}

void require_shape(const Model& m1, const Model& m2, const SimulationPair& pair) {
  if (pair.s.size() != static_cast<std::size_t>(m1.polarity().object_count()) ||
      pair.t.size() != static_cast<std::size_t>(m1.polarity().attribute_count()))
    throw std::invalid_argument("pair arrays do not match the first model");
  ObjectSet gmax = m2.polarity().all_objects();
  AttributeSet mmax = m2.polarity().all_attributes();
  for (const ObjectSet& row : pair.s)
    if (!row.subset_of(gmax)) throw std::invalid_argument("object pair out of range");
  for (const AttributeSet& row : pair.t)
    if (!row.subset_of(mmax)) throw std::invalid_argument("attribute pair out of range");
}

}  // namespace

std::vector<SimViolation> check_simulation(const Model& m1, const Model& m2,
                                           const SimulationPair& pair) {
  require_shared_vocabulary(m1, m2);
  require_shape(m1, m2, pair);
  Sides sides(m1, m2);
  const Polarity& p1 = m1.polarity();
  const Polarity& p2 = m2.polarity();
  std::vector<SimViolation> out;

  for (int g1 = 0; g1 < p1.object_count(); ++g1) {
    for (int g2 : pair.s[g1]) {
      for (const auto& [atom, c1] : m1.valuation) {
        ConceptId c2 = m2.valuation.at(atom);
        if (m1.lattice[c1].extent.contains(g1) && !m2.lattice[c2].extent.contains(g2))
          out.push_back({1, p1.object_name(g1) + " S " + p2.object_name(g2) + " but only " +
                                p1.object_name(g1) + " is in the extent of '" + atom + "'"});
      }
      if (!sides.cond3(pair, g1, g2))
        out.push_back({3, "no T-witness across the incidence complement for " +
                              p1.object_name(g1) + " S " + p2.object_name(g2)});
      if (!sides.cond5(pair, g1, g2))
        out.push_back({5, "no T-witness across the box complement for " + p1.object_name(g1) +
                              " S " + p2.object_name(g2)});
    }
  }
  for (int m1i = 0; m1i < p1.attribute_count(); ++m1i) {
    for (int m2i : pair.t[m1i]) {
      for (const auto& [atom, c1] : m1.valuation) {
        ConceptId c2 = m2.valuation.at(atom);
        if (m2.lattice[c2].intent.contains(m2i) && !m1.lattice[c1].intent.contains(m1i))
          out.push_back({2, p1.attribute_name(m1i) + " T " + p2.attribute_name(m2i) +
                                " but only " + p2.attribute_name(m2i) +
                                " is in the intent of '" + atom + "'"});
      }
      if (!sides.cond4(pair, m1i, m2i))
        out.push_back({4, "no S-witness across the incidence complement for " +
                              p1.attribute_name(m1i) + " T " + p2.attribute_name(m2i)});
      if (!sides.cond6(pair, m1i, m2i))
        out.push_back({6, "no S-witness across the dia complement for " +
                              p1.attribute_name(m1i) + " T " + p2.attribute_name(m2i)});
    }
  }
  return out;
}

SimulationPair largest_simulation_within(const Model& m1, const Model& m2,
                                         const SimulationPair& seed) {
  require_shared_vocabulary(m1, m2);
  require_shape(m1, m2, seed);
  Sides sides(m1, m2);
  const Polarity& p1 = m1.polarity();
  const Polarity& p2 = m2.polarity();

  SimulationPair pair = seed;
  // Atom conditions 1 and 2 are independent of the pair, so apply them once.
  for (int g1 = 0; g1 < p1.object_count(); ++g1)
    for (int g2 : pair.s[g1])
      for (const auto& [atom, c1] : m1.valuation)
        if (m1.lattice[c1].extent.contains(g1) &&
            !m2.lattice[m2.valuation.at(atom)].extent.contains(g2))
          pair.s[g1].erase(g2);
  for (int m1i = 0; m1i < p1.attribute_count(); ++m1i)
    for (int m2i : pair.t[m1i])
      for (const auto& [atom, c1] : m1.valuation)
        if (m2.lattice[m2.valuation.at(atom)].intent.contains(m2i) &&
            !m1.lattice[c1].intent.contains(m1i))
          pair.t[m1i].erase(m2i);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int g1 = 0; g1 < p1.object_count(); ++g1)
      for (int g2 : pair.s[g1])
        if (!sides.cond3(pair, g1, g2) || !sides.cond5(pair, g1, g2)) {
          pair.s[g1].erase(g2);
          changed = true;
        }
    for (int m1i = 0; m1i < p1.attribute_count(); ++m1i)
      for (int m2i : pair.t[m1i])
        if (!sides.cond4(pair, m1i, m2i) || !sides.cond6(pair, m1i, m2i)) {
          pair.t[m1i].erase(m2i);
          changed = true;
        }
  }
  return pair;
}

SimulationPair largest_simulation(const Model& m1, const Model& m2) {
  SimulationPair full;
  full.s.assign(m1.polarity().object_count(), m2.polarity().all_objects());
  full.t.assign(m1.polarity().attribute_count(), m2.polarity().all_attributes());
  return largest_simulation_within(m1, m2, full);
}

bool bisimilar_objects(const Model& m1, const Model& m2, int g1, int g2) {
  SimulationPair fwd = largest_simulation(m1, m2);
  SimulationPair bwd = largest_simulation(m2, m1);
  return fwd.s.at(g1).contains(g2) && bwd.s.at(g2).contains(g1);
}

bool bisimilar_attributes(const Model& m1, const Model& m2, int a1, int a2) {
  SimulationPair fwd = largest_simulation(m1, m2);
  SimulationPair bwd = largest_simulation(m2, m1);
  return fwd.t.at(a1).contains(a2) && bwd.t.at(a2).contains(a1);
}

std::vector<InvarianceFailure> invariance_test(const Model& m1, const Model& m2,
                                               const SimulationPair& pair,
                                               const std::vector<FormulaPtr>& corpus) {
  require_shared_vocabulary(m1, m2);
  require_shape(m1, m2, pair);
  std::vector<InvarianceFailure> out;
  for (const FormulaPtr& f : corpus) {
    ConceptId c1 = evaluate(m1, *f);
    ConceptId c2 = evaluate(m2, *f);
    const Concept& k1 = m1.lattice[c1];
    const Concept& k2 = m2.lattice[c2];
    for (int g1 = 0; g1 < m1.polarity().object_count(); ++g1)
      for (int g2 : pair.s[g1])
        if (k1.extent.contains(g1) && !k2.extent.contains(g2))
          out.push_back({print_formula(*f), false, g1, g2});
    for (int m1i = 0; m1i < m1.polarity().attribute_count(); ++m1i)
      for (int m2i : pair.t[m1i])
        if (k2.intent.contains(m2i) && !k1.intent.contains(m1i))
          out.push_back({print_formula(*f), true, m1i, m2i});
  }
  return out;
}

SimulationPair parse_pair_file(const std::string& text, const Model& m1, const Model& m2) {
  SimulationPair pair;
  pair.s.assign(m1.polarity().object_count(), ObjectSet::empty());
  pair.t.assign(m1.polarity().attribute_count(), AttributeSet::empty());

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    std::istringstream probe(s);
    std::string word;
    if (!(probe >> word)) continue;
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw ModelError(line, "expected 'S:' or 'T:' entry");
    std::string key = s.substr(0, colon);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    std::string payload = s.substr(colon + 1);

    std::stringstream pairs(payload);
    std::string part;
    while (std::getline(pairs, part, ';')) {
      std::istringstream two(part);
      std::string a, b, extra;
      if (!(two >> a)) continue;
      if (!(two >> b) || (two >> extra))
        throw ModelError(line, "expected 'name name' pairs separated by ';'");
      if (key == "S") {
        int g1 = m1.polarity().object_index(a);
        int g2 = m2.polarity().object_index(b);
        if (g1 < 0) throw ModelError(line, "unknown object '" + a + "' in the first model");
        if (g2 < 0) throw ModelError(line, "unknown object '" + b + "' in the second model");
        pair.s[g1].insert(g2);
      } else if (key == "T") {
        int a1 = m1.polarity().attribute_index(a);
        int a2 = m2.polarity().attribute_index(b);
        if (a1 < 0) throw ModelError(line, "unknown attribute '" + a + "' in the first model");
        if (a2 < 0) throw ModelError(line, "unknown attribute '" + b + "' in the second model");
        pair.t[a1].insert(a2);
      } else {
        throw ModelError(line, "unknown section '" + key + "'");
      }
    }
  }
  return pair;
}

SimulationPair load_pair_file(const std::string& path, const Model& m1, const Model& m2) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_pair_file(buf.str(), m1, m2);
}

}  // namespace ndmu
