#include "ndmu/polarity.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace ndmu {

namespace {

void check_names(const std::vector<std::string>& names, const char* what) {
  if (names.empty()) throw ModelError(std::string(what) + " must be non-empty");
  if (names.size() > static_cast<std::size_t>(kMaxUniverse))
    throw ModelError(std::string(what) + " exceed the supported universe size");
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size())
    throw ModelError(std::string("duplicate ") + what + " name");
}

std::string join_names(const std::vector<std::string>& names, std::uint64_t bits) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if ((bits >> i) & 1u) {
      if (!first) out += ' ';
      out += names[i];
      first = false;
    }
  }
  out += '}';
  return out;
}

}  // namespace

Polarity::Polarity(std::vector<std::string> objects, std::vector<std::string> attributes)
    : objects_(std::move(objects)), attributes_(std::move(attributes)) {
  check_names(objects_, "objects");
  check_names(attributes_, "attributes");
  row_.assign(objects_.size(), AttributeSet::empty());
  col_.assign(attributes_.size(), ObjectSet::empty());
}

void Polarity::relate(int g, int m) {
  row_.at(g).insert(m);
  col_.at(m).insert(g);
}

int Polarity::object_index(std::string_view name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return static_cast<int>(i);
  return -1;
}

int Polarity::attribute_index(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i] == name) return static_cast<int>(i);
  return -1;
}

AttributeSet Polarity::up(ObjectSet b) const {
  AttributeSet y = all_attributes();
  for (int g : b) y &= row_[g];
  return y;
}

ObjectSet Polarity::down(AttributeSet y) const {
  ObjectSet b = all_objects();
  for (int m : y) b &= col_[m];
  return b;
}

std::string Polarity::object_set_text(ObjectSet s) const { return join_names(objects_, s.bits()); }

std::string Polarity::attribute_set_text(AttributeSet s) const {
  return join_names(attributes_, s.bits());
}

Polarity powerset_polarity(const std::vector<std::string>& names) {
  Polarity p(names, names);
  for (int g = 0; g < p.object_count(); ++g)
    for (int m = 0; m < p.attribute_count(); ++m)
      if (g != m) p.relate(g, m);
  return p;
}

ConceptLattice ConceptLattice::build(const Polarity& p, std::size_t max_cells) {
  std::size_t cells =
      static_cast<std::size_t>(p.object_count()) * static_cast<std::size_t>(p.attribute_count());
  if (cells > max_cells)
    throw ModelError("context size " + std::to_string(cells) + " exceeds the bound of " +
                     std::to_string(max_cells) + " cells");

  // Every extent is an intersection of attribute columns; close {G} under
  // single-column intersections.
  ConceptLattice lat(p);
  std::set<std::uint64_t> extents;
  std::deque<ObjectSet> work;
  ObjectSet top_extent = p.all_objects();
  extents.insert(top_extent.bits());
  work.push_back(top_extent);
  while (!work.empty()) {
    ObjectSet e = work.front();
    work.pop_front();
    for (int m = 0; m < p.attribute_count(); ++m) {
      ObjectSet e2 = e & p.column(m);
      if (extents.insert(e2.bits()).second) work.push_back(e2);
    }
  }

  for (std::uint64_t bits : extents) {
    ObjectSet extent = ObjectSet::from_bits(bits);
    lat.concepts_.push_back({extent, p.up(extent)});
  }
  std::sort(lat.concepts_.begin(), lat.concepts_.end(), [](const Concept& a, const Concept& b) {
    if (a.extent.count() != b.extent.count()) return a.extent.count() < b.extent.count();
    return a.extent.bits() < b.extent.bits();
  });
  for (std::size_t i = 0; i < lat.concepts_.size(); ++i)
    lat.by_extent_[lat.concepts_[i].extent.bits()] = static_cast<ConceptId>(i);

  lat.top_ = lat.by_extent_.at(top_extent.bits());
  lat.bottom_ = lat.by_extent_.at(p.down(p.all_attributes()).bits());
  return lat;
}

ConceptId ConceptLattice::id_of_extent(ObjectSet extent) const {
  auto it = by_extent_.find(extent.bits());
  if (it == by_extent_.end())
    throw std::invalid_argument("set " + polarity_.object_set_text(extent) +
                                " is not a stable extent of this context");
  return it->second;
}

bool ConceptLattice::leq(ConceptId a, ConceptId b) const {
  return concepts_.at(a).extent.subset_of(concepts_.at(b).extent);
}

ConceptId ConceptLattice::join(ConceptId a, ConceptId b) const {
  AttributeSet intent = concepts_.at(a).intent & concepts_.at(b).intent;
  return id_of_extent(polarity_.down(intent));
}

ConceptId ConceptLattice::meet(ConceptId a, ConceptId b) const {
  return id_of_extent(concepts_.at(a).extent & concepts_.at(b).extent);
}

ConceptId ConceptLattice::join_all(const std::vector<ConceptId>& cs) const {
  ConceptId acc = bottom_;
  for (ConceptId c : cs) acc = join(acc, c);
  return acc;
}

ConceptId ConceptLattice::meet_all(const std::vector<ConceptId>& cs) const {
  ConceptId acc = top_;
  for (ConceptId c : cs) acc = meet(acc, c);
  return acc;
}

ConceptId ConceptLattice::object_concept(int g) const {
  return id_of_extent(polarity_.closure_extent(ObjectSet::single(g)));
}

ConceptId ConceptLattice::attribute_concept(int m) const {
  return id_of_extent(polarity_.down(AttributeSet::single(m)));
}

ConceptId ConceptLattice::close_extent_seed(ObjectSet seed) const {
  return id_of_extent(polarity_.closure_extent(seed));
}

std::string ConceptLattice::to_string(ConceptId c) const {
  const Concept& k = concepts_.at(c);
  return "(" + polarity_.object_set_text(k.extent) + ", " +
         polarity_.attribute_set_text(k.intent) + ")";
}

EnrichedContext::EnrichedContext(Polarity p) : polarity(std::move(p)) {
  rbox_row.assign(polarity.object_count(), AttributeSet::empty());
  rbox_col.assign(polarity.attribute_count(), ObjectSet::empty());
  rdia_row.assign(polarity.attribute_count(), ObjectSet::empty());
  rdia_col.assign(polarity.object_count(), AttributeSet::empty());
}

void EnrichedContext::add_rbox(int g, int m) {
  rbox_row.at(g).insert(m);
  rbox_col.at(m).insert(g);
}

void EnrichedContext::add_rdia(int m, int g) {
  rdia_row.at(m).insert(g);
  rdia_col.at(g).insert(m);
}

std::string CompatViolation::describe() const {
  return relation + " " + section + ": set " + set_text + " has closure " + closure_text;
}

std::vector<CompatViolation> check_compatible(const EnrichedContext& e) {
  const Polarity& p = e.polarity;
  std::vector<CompatViolation> out;
  for (int m = 0; m < p.attribute_count(); ++m) {
    ObjectSet v = e.rbox_col[m];
    ObjectSet c = p.closure_extent(v);
    if (c != v)
      out.push_back({"Rbox", "column " + p.attribute_name(m), p.object_set_text(v),
                     p.object_set_text(c)});
  }
  for (int g = 0; g < p.object_count(); ++g) {
    AttributeSet v = e.rbox_row[g];
    AttributeSet c = p.closure_intent(v);
    if (c != v)
      out.push_back({"Rbox", "row " + p.object_name(g), p.attribute_set_text(v),
                     p.attribute_set_text(c)});
  }
  for (int g = 0; g < p.object_count(); ++g) {
    AttributeSet v = e.rdia_col[g];
    AttributeSet c = p.closure_intent(v);
    if (c != v)
      out.push_back({"Rdia", "column " + p.object_name(g), p.attribute_set_text(v),
                     p.attribute_set_text(c)});
  }
  for (int m = 0; m < p.attribute_count(); ++m) {
    ObjectSet v = e.rdia_row[m];
    ObjectSet c = p.closure_extent(v);
    if (c != v)
      out.push_back({"Rdia", "row " + p.attribute_name(m), p.object_set_text(v),
                     p.object_set_text(c)});
  }
  return out;
}

namespace {

void require_concept(const Polarity& p, const Concept& c) {
  if (p.up(c.extent) != c.intent || p.down(c.intent) != c.extent)
    throw std::invalid_argument("(" + p.object_set_text(c.extent) + ", " +
                                p.attribute_set_text(c.intent) + ") is not a concept");
}

}  // namespace

Concept box_concept(const EnrichedContext& e, const Concept& c) {
  const Polarity& p = e.polarity;
  require_concept(p, c);
  ObjectSet extent = p.all_objects();
  for (int m : c.intent) extent &= e.rbox_col[m];
  return {extent, p.up(extent)};
}

Concept dia_concept(const EnrichedContext& e, const Concept& c) {
  const Polarity& p = e.polarity;
  require_concept(p, c);
  AttributeSet intent = p.all_attributes();
  for (int g : c.extent) intent &= e.rdia_col[g];
  return {p.down(intent), intent};
}

namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::vector<std::pair<std::string, std::string>> split_pairs(const std::string& payload, int line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream in(payload);
  std::string part;
  while (std::getline(in, part, ';')) {
    std::vector<std::string> w = split_words(part);
    if (w.empty()) continue;
    if (w.size() != 2)
      throw ModelError(line, "expected 'name name' pairs separated by ';', got '" + part + "'");
    out.emplace_back(w[0], w[1]);
  }
  return out;
}

}  // namespace

ContextFile parse_context_file(const std::string& text) {
  std::vector<std::string> objects, attributes;
  std::vector<std::tuple<int, std::string, std::string>> i_pairs, rbox_pairs, rdia_pairs;
  std::vector<std::tuple<int, std::string, std::string>> vals;  // line, atom, payload
  bool saw_objects = false, saw_attributes = false;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    if (split_words(s).empty()) continue;
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) throw ModelError(line, "expected 'key: payload'");
    std::string key_text = s.substr(0, colon);
    std::string payload = s.substr(colon + 1);
    std::vector<std::string> key = split_words(key_text);

    if (key.size() == 1 && key[0] == "objects") {
      if (saw_objects) throw ModelError(line, "duplicate objects entry");
      objects = split_words(payload);
      saw_objects = true;
    } else if (key.size() == 1 && key[0] == "attributes") {
      if (saw_attributes) throw ModelError(line, "duplicate attributes entry");
      attributes = split_words(payload);
      saw_attributes = true;
    } else if (key.size() == 1 && (key[0] == "I" || key[0] == "Rbox" || key[0] == "Rdia")) {
      auto& sink = key[0] == "I" ? i_pairs : key[0] == "Rbox" ? rbox_pairs : rdia_pairs;
      for (auto& [a, b] : split_pairs(payload, line)) sink.emplace_back(line, a, b);
    } else if (key.size() == 2 && key[0] == "val") {
      vals.emplace_back(line, key[1], payload);
    } else {
      throw ModelError(line, "unknown entry '" + key_text + "'");
    }
  }

  if (!saw_objects) throw ModelError("missing objects entry");
  if (!saw_attributes) throw ModelError("missing attributes entry");
  if (objects.empty()) throw ModelError("objects must be non-empty");
  if (attributes.empty()) throw ModelError("attributes must be non-empty");

  Polarity p(objects, attributes);
  auto obj = [&](int ln, const std::string& n) {
    int i = p.object_index(n);
    if (i < 0) throw ModelError(ln, "unknown object '" + n + "'");
    return i;
  };
  auto attr = [&](int ln, const std::string& n) {
    int i = p.attribute_index(n);
    if (i < 0) throw ModelError(ln, "unknown attribute '" + n + "'");
    return i;
  };

  for (auto& [ln, a, b] : i_pairs) p.relate(obj(ln, a), attr(ln, b));

  EnrichedContext ctx(p);
  for (auto& [ln, a, b] : rbox_pairs) ctx.add_rbox(obj(ln, a), attr(ln, b));
  for (auto& [ln, a, b] : rdia_pairs) ctx.add_rdia(attr(ln, a), obj(ln, b));

  ContextFile out{std::move(ctx), {}};
  std::set<std::string> seen_atoms;
  for (auto& [ln, name, payload] : vals) {
    if (!seen_atoms.insert(name).second) throw ModelError(ln, "duplicate val entry for '" + name + "'");
    ObjectSet seed;
    for (const std::string& n : split_words(payload)) seed.insert(obj(ln, n));
    out.valuations.emplace_back(name, seed);
  }
  return out;
}

ContextFile load_context_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_context_file(buf.str());
}

}  // namespace ndmu
